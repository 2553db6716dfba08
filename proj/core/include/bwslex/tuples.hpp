#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bwslex {

// One annotation question: four term surfaces in presentation order.
struct Tuple4 {
  std::string tuple_id;
  std::array<std::string, 4> items;

  bool contains(std::string_view surface) const;
  friend bool operator==(const Tuple4&, const Tuple4&) = default;
};

// Line-delimited JSON: {"tuple_id": ..., "items": [4 strings]} per line.
void write_tuples(const std::vector<Tuple4>& tuples, const std::filesystem::path& path);
std::string tuple_to_json_line(const Tuple4& tuple);
// Throws FormatError on malformed records, DesignError on duplicate tuple ids.
std::vector<Tuple4> read_tuples(const std::filesystem::path& path);

// tuple_id -> position in the list. Throws DesignError on duplicate ids.
class TupleIndex {
 public:
  TupleIndex() = default;
  explicit TupleIndex(const std::vector<Tuple4>& tuples);

  const Tuple4* find(std::string_view tuple_id) const;
  std::size_t position(std::string_view tuple_id) const;  // throws DataError if unknown
  const std::vector<Tuple4>& tuples() const noexcept { return *tuples_; }

 private:
  const std::vector<Tuple4>* tuples_ = nullptr;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace bwslex
