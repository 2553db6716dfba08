#include "bwslex/responses.hpp"

#include <json.hpp>

#include "bwslex/error.hpp"
#include "bwslex/lexicon.hpp"
#include "text_io.hpp"

namespace bwslex {

std::string response_to_json_line(const Response& r) {
  nlohmann::ordered_json j;
  j["response_id"] = r.response_id;
  j["annotator_id"] = r.annotator_id;
  j["tuple_id"] = r.tuple_id;
  j["best"] = r.best;
  j["worst"] = r.worst;
  j["unix_ms"] = r.unix_ms;
  return j.dump();
}

Response response_from_json_line(const std::string& line, std::size_t lineno) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(), lineno);
  }
  if (!j.is_object()) throw FormatError("response record must be a JSON object", lineno);
  auto text = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw FormatError(std::string("response record needs string field \"") + key + "\"", lineno);
    }
    return j[key].get<std::string>();
  };
  Response r;
  r.response_id = text("response_id");
  r.annotator_id = text("annotator_id");
  r.tuple_id = text("tuple_id");
  r.best = normalize_surface(text("best"));
  r.worst = normalize_surface(text("worst"));
  if (!j.contains("unix_ms") || !j["unix_ms"].is_number_integer()) {
    throw FormatError("response record needs integer field \"unix_ms\"", lineno);
  }
  r.unix_ms = j["unix_ms"].get<std::int64_t>();
  return r;
}

void write_responses(const std::vector<Response>& responses, const std::filesystem::path& path) {
  detail::OutputFile file(path);
  for (const auto& r : responses) file.stream() << response_to_json_line(r) << '\n';
  file.close();
}

std::vector<Response> read_responses(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  std::vector<Response> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_blank(lines[i])) continue;
    out.push_back(response_from_json_line(lines[i], i + 1));
  }
  return out;
}

void check_response(const Response& r, const TupleIndex& tuples) {
  const Tuple4* t = tuples.find(r.tuple_id);
  if (t == nullptr) throw DataError("response " + r.response_id + " references unknown tuple '" + r.tuple_id + "'");
  if (r.best == r.worst) throw DataError("response " + r.response_id + ": best equals worst");
  if (!t->contains(r.best) || !t->contains(r.worst)) {
    throw DataError("response " + r.response_id + ": answer not among the items of tuple " + r.tuple_id);
  }
}

GoldKey load_gold(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  GoldKey gold;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::is_blank(lines[i]) || detail::trim(lines[i]).front() == '#') continue;
    const auto cols = detail::split_tabs(lines[i]);
    if (cols.size() != 3) throw FormatError("expected 3 tab-separated columns (tuple_id, best, worst)", lineno);
    std::string id(detail::trim(cols[0]));
    GoldAnswer answer{normalize_surface(cols[1]), normalize_surface(cols[2])};
    if (id.empty() || answer.expected_best.empty() || answer.expected_worst.empty()) {
      throw FormatError("empty gold field", lineno);
    }
    if (answer.expected_best == answer.expected_worst) throw FormatError("expected best equals expected worst", lineno);
    if (!gold.emplace(std::move(id), std::move(answer)).second) throw FormatError("duplicate gold tuple_id", lineno);
  }
  return gold;
}

void save_gold(const GoldKey& gold, const std::filesystem::path& path) {
  detail::OutputFile file(path);
  for (const auto& [id, a] : gold) file.stream() << id << '\t' << a.expected_best << '\t' << a.expected_worst << '\n';
  file.close();
}

void check_gold(const GoldKey& gold, const TupleIndex& tuples) {
  for (const auto& [id, a] : gold) {
    const Tuple4* t = tuples.find(id);
    if (t == nullptr) throw DataError("gold key references unknown tuple '" + id + "'");
    if (a.expected_best == a.expected_worst || !t->contains(a.expected_best) || !t->contains(a.expected_worst)) {
      throw DataError("gold answer for tuple '" + id + "' is not a valid best/worst choice");
    }
  }
}

}  // namespace bwslex
