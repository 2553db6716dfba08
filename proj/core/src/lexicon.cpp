#include "bwslex/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "bwslex/error.hpp"
#include "text_io.hpp"

namespace bwslex {

namespace detail {

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace detail

std::string normalize_surface(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char ch : raw) {
    const auto u = static_cast<unsigned char>(ch);
    if (u < 0x80 && std::isspace(u)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : ch);
  }
  return out;
}

std::vector<std::string> split_tokens(std::string_view surface) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= surface.size()) {
    const std::size_t sp = surface.find(' ', start);
    const std::size_t end = sp == std::string_view::npos ? surface.size() : sp;
    if (end > start) tokens.emplace_back(surface.substr(start, end - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return tokens;
}

std::vector<Term> make_terms(const std::vector<std::string>& surfaces) {
  std::vector<Term> terms;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    std::string s = normalize_surface(surfaces[i]);
    if (s.empty()) throw DesignError("empty term at position " + std::to_string(i + 1));
    if (!seen.emplace(s, i).second) throw DesignError("duplicate term '" + s + "' at position " + std::to_string(i + 1));
    terms.push_back(Term{TermId{static_cast<std::uint32_t>(terms.size())}, std::move(s)});
  }
  return terms;
}

std::vector<Term> load_terms(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  std::vector<Term> terms;
  std::unordered_map<std::string, std::size_t> first_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string s = normalize_surface(lines[i]);
    if (s.empty()) continue;
    const auto [it, inserted] = first_line.emplace(s, i + 1);
    if (!inserted) {
      throw DesignError(path.string() + ": line " + std::to_string(i + 1) + ": duplicate term '" + s +
                        "' (first seen on line " + std::to_string(it->second) + ")");
    }
    terms.push_back(Term{TermId{static_cast<std::uint32_t>(terms.size())}, std::move(s)});
  }
  return terms;
}

std::string_view to_string(ModifierCategory c) noexcept {
  switch (c) {
    case ModifierCategory::negator: return "negator";
    case ModifierCategory::modal: return "modal";
    case ModifierCategory::degree_adverb: return "degree_adverb";
  }
  return "unknown";
}

std::optional<ModifierCategory> parse_category(std::string_view s) noexcept {
  if (s == "negator") return ModifierCategory::negator;
  if (s == "modal") return ModifierCategory::modal;
  if (s == "degree_adverb") return ModifierCategory::degree_adverb;
  return std::nullopt;
}

int category_precedence(ModifierCategory c) noexcept {
  switch (c) {
    case ModifierCategory::negator: return 0;
    case ModifierCategory::modal: return 1;
    case ModifierCategory::degree_adverb: return 2;
  }
  return 3;
}

std::vector<ModifierEntry> load_modifier_inventory(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  std::vector<ModifierEntry> entries;
  std::unordered_map<std::string, std::size_t> first_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = lines[i];
    if (detail::is_blank(line) || detail::trim(line).front() == '#') continue;
    const auto cols = detail::split_tabs(line);
    if (cols.size() != 2) throw FormatError("expected 2 tab-separated columns (surface, category)", lineno);
    std::string surface = normalize_surface(cols[0]);
    if (surface.empty()) throw FormatError("empty modifier surface", lineno);
    const auto category = parse_category(detail::trim(cols[1]));
    if (!category) throw FormatError("unknown modifier category '" + std::string(detail::trim(cols[1])) + "'", lineno);
    const auto [it, inserted] = first_line.emplace(surface, lineno);
    if (!inserted) {
      throw FormatError("duplicate modifier '" + surface + "' (first on line " + std::to_string(it->second) + ")",
                        lineno);
    }
    entries.push_back(ModifierEntry{std::move(surface), *category});
  }
  return entries;
}

ModifierInventory::ModifierInventory(std::vector<ModifierEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i].surface = normalize_surface(entries_[i].surface);
    if (entries_[i].surface.empty()) throw DesignError("empty modifier surface");
    if (!index_.emplace(entries_[i].surface, i).second) {
      throw DesignError("duplicate modifier '" + entries_[i].surface + "'");
    }
    longest_tokens_ = std::max(longest_tokens_, split_tokens(entries_[i].surface).size());
  }
}

const ModifierEntry* ModifierInventory::find(std::string_view surface) const {
  const auto it = index_.find(surface);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::string PhraseDecomposition::modifier_key() const {
  std::string key;
  for (const auto& m : modifier_chain) {
    if (!key.empty()) key.push_back(' ');
    key += m.surface;
  }
  return key;
}

ModifierCategory PhraseDecomposition::category() const {
  ModifierCategory best = ModifierCategory::degree_adverb;
  for (const auto& m : modifier_chain) {
    if (category_precedence(m.category) < category_precedence(best)) best = m.category;
  }
  return best;
}

std::optional<PhraseDecomposition> decompose(std::string_view phrase, const ModifierInventory& inventory) {
  const auto tokens = split_tokens(phrase);
  if (tokens.size() < 2) return std::nullopt;

  PhraseDecomposition result;
  const std::size_t content_pos = tokens.size() - 1;
  std::size_t pos = 0;
  while (pos < content_pos) {
    const std::size_t max_len = std::min(inventory.longest_tokens(), content_pos - pos);
    const ModifierEntry* match = nullptr;
    std::size_t match_len = 0;
    std::string candidate;
    for (std::size_t len = 1; len <= max_len; ++len) {
      if (len > 1) candidate.push_back(' ');
      candidate += tokens[pos + len - 1];
      if (const auto* e = inventory.find(candidate)) {
        match = e;
        match_len = len;
      }
    }
    if (match == nullptr) return std::nullopt;
    result.modifier_chain.push_back(*match);
    pos += match_len;
  }
  result.content_word = tokens[content_pos];
  return result;
}

void ScoredLexicon::set(std::string surface, double score) {
  if (!std::isfinite(score) || score < -1.0 || score > 1.0) {
    throw DataError("score for '" + surface + "' outside [-1, 1]: " + std::to_string(score));
  }
  entries_.insert_or_assign(std::move(surface), score);
}

std::optional<double> ScoredLexicon::find(std::string_view surface) const {
  const auto it = entries_.find(surface);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double ScoredLexicon::at(std::string_view surface) const {
  const auto it = entries_.find(surface);
  if (it == entries_.end()) throw DataError("term not in lexicon: '" + std::string(surface) + "'");
  return it->second;
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", score);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

void save_lexicon(const ScoredLexicon& lexicon, const std::filesystem::path& path) {
  detail::OutputFile file(path);
  for (const auto& [term, score] : lexicon.entries()) {
    file.stream() << term << '\t' << format_score(score) << '\n';
  }
  file.close();
}

ScoredLexicon load_lexicon(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  ScoredLexicon lex;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::is_blank(lines[i])) continue;
    const auto cols = detail::split_tabs(lines[i]);
    if (cols.size() != 2) throw FormatError("expected 2 tab-separated columns (term, score)", lineno);
    std::string term = normalize_surface(cols[0]);
    if (term.empty()) throw FormatError("empty term", lineno);
    double score = 0.0;
    if (!detail::parse_double(cols[1], score)) {
      throw FormatError("unparseable score '" + std::string(cols[1]) + "'", lineno);
    }
    if (score < -1.0 || score > 1.0) throw FormatError("score " + std::string(detail::trim(cols[1])) + " outside [-1, 1]", lineno);
    if (lex.contains(term)) throw FormatError("duplicate term '" + term + "'", lineno);
    lex.set(std::move(term), score);
  }
  return lex;
}

std::map<std::string, double, std::less<>> load_score_table(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  std::map<std::string, double, std::less<>> table;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::is_blank(lines[i])) continue;
    const auto cols = detail::split_tabs(lines[i]);
    if (cols.size() != 2) throw FormatError("expected 2 tab-separated columns (term, value)", lineno);
    std::string term = normalize_surface(cols[0]);
    double value = 0.0;
    if (term.empty() || !detail::parse_double(cols[1], value)) throw FormatError("malformed row", lineno);
    if (!table.emplace(std::move(term), value).second) throw FormatError("duplicate term", lineno);
  }
  return table;
}

}  // namespace bwslex
