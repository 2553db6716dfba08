#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bwslex/tuples.hpp"

namespace bwslex {

// One annotator's answer to one tuple.
struct Response {
  std::string response_id;
  std::string annotator_id;
  std::string tuple_id;
  std::string best;
  std::string worst;
  std::int64_t unix_ms = 0;

  friend bool operator==(const Response&, const Response&) = default;
};

// Line-delimited JSON with fields response_id, annotator_id, tuple_id, best,
// worst, unix_ms. Unknown fields are ignored on read.
std::string response_to_json_line(const Response& r);
Response response_from_json_line(const std::string& line, std::size_t lineno = 0);
void write_responses(const std::vector<Response>& responses, const std::filesystem::path& path);
std::vector<Response> read_responses(const std::filesystem::path& path);

// Throws DataError when the tuple is unknown, best == worst, or either answer
// is not one of the tuple's items.
void check_response(const Response& r, const TupleIndex& tuples);

struct GoldAnswer {
  std::string expected_best;
  std::string expected_worst;
};

using GoldKey = std::map<std::string, GoldAnswer, std::less<>>;

// TSV: tuple_id, expected_best, expected_worst.
GoldKey load_gold(const std::filesystem::path& path);
void save_gold(const GoldKey& gold, const std::filesystem::path& path);
// Throws DataError if a gold entry references an unknown tuple or violates best != worst / membership.
void check_gold(const GoldKey& gold, const TupleIndex& tuples);

}  // namespace bwslex
