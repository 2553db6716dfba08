#include "bwslex/tuples.hpp"

#include <algorithm>
#include <json.hpp>

#include "bwslex/error.hpp"
#include "bwslex/lexicon.hpp"
#include "text_io.hpp"

namespace bwslex {

bool Tuple4::contains(std::string_view surface) const {
  return std::find(items.begin(), items.end(), surface) != items.end();
}

std::string tuple_to_json_line(const Tuple4& tuple) {
  nlohmann::ordered_json j;
  j["tuple_id"] = tuple.tuple_id;
  j["items"] = tuple.items;
  return j.dump();
}

void write_tuples(const std::vector<Tuple4>& tuples, const std::filesystem::path& path) {
  detail::OutputFile file(path);
  for (const auto& t : tuples) file.stream() << tuple_to_json_line(t) << '\n';
  file.close();
}

std::vector<Tuple4> read_tuples(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  std::vector<Tuple4> tuples;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::is_blank(lines[i])) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!j.is_object() || !j.contains("tuple_id") || !j["tuple_id"].is_string() || !j.contains("items") ||
        !j["items"].is_array() || j["items"].size() != 4) {
      throw FormatError("tuple record needs \"tuple_id\" (string) and \"items\" (4 strings)", lineno);
    }
    Tuple4 t;
    t.tuple_id = j["tuple_id"].get<std::string>();
    for (std::size_t k = 0; k < 4; ++k) {
      if (!j["items"][k].is_string()) throw FormatError("tuple items must be strings", lineno);
      t.items[k] = normalize_surface(j["items"][k].get<std::string>());
    }
    tuples.push_back(std::move(t));
  }
  TupleIndex check(tuples);
  return tuples;
}

TupleIndex::TupleIndex(const std::vector<Tuple4>& tuples) : tuples_(&tuples) {
  index_.reserve(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (!index_.emplace(tuples[i].tuple_id, i).second) {
      throw DesignError("duplicate tuple_id '" + tuples[i].tuple_id + "'");
    }
  }
}

const Tuple4* TupleIndex::find(std::string_view tuple_id) const {
  const auto it = index_.find(std::string(tuple_id));
  return it == index_.end() ? nullptr : &(*tuples_)[it->second];
}

std::size_t TupleIndex::position(std::string_view tuple_id) const {
  const auto it = index_.find(std::string(tuple_id));
  if (it == index_.end()) throw DataError("unknown tuple_id '" + std::string(tuple_id) + "'");
  return it->second;
}

}  // namespace bwslex
