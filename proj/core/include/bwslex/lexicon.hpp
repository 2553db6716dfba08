#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bwslex {

struct TermId {
  std::uint32_t value = 0;
  friend auto operator<=>(const TermId&, const TermId&) = default;
};

// A word or multi-word phrase. `surface` is lowercase, trimmed, single-spaced.
struct Term {
  TermId id;
  std::string surface;
};

// Lowercases ASCII letters, trims, and collapses internal runs of whitespace
// to one space. Non-ASCII bytes pass through unchanged.
std::string normalize_surface(std::string_view raw);

std::vector<std::string> split_tokens(std::string_view surface);

// One term per line; blank lines skipped; ids assigned sequentially from 0.
// Throws DesignError naming the line on a duplicate surface, IoError if unreadable.
std::vector<Term> load_terms(const std::filesystem::path& path);
std::vector<Term> make_terms(const std::vector<std::string>& surfaces);

enum class ModifierCategory { negator, modal, degree_adverb };

std::string_view to_string(ModifierCategory c) noexcept;
std::optional<ModifierCategory> parse_category(std::string_view s) noexcept;

// Lower value wins when a modifier chain mixes categories.
int category_precedence(ModifierCategory c) noexcept;

struct ModifierEntry {
  std::string surface;
  ModifierCategory category;
};

// TSV rows "surface<TAB>category". Blank lines and lines starting with '#' are skipped.
std::vector<ModifierEntry> load_modifier_inventory(const std::filesystem::path& path);

class ModifierInventory {
 public:
  ModifierInventory() = default;
  // Throws DesignError on duplicate surfaces.
  explicit ModifierInventory(std::vector<ModifierEntry> entries);

  const std::vector<ModifierEntry>& entries() const noexcept { return entries_; }
  const ModifierEntry* find(std::string_view surface) const;
  std::size_t longest_tokens() const noexcept { return longest_tokens_; }

 private:
  std::vector<ModifierEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::size_t longest_tokens_ = 0;
};

struct PhraseDecomposition {
  std::vector<ModifierEntry> modifier_chain;
  std::string content_word;

  // Modifier surfaces joined with single spaces, e.g. "would be very".
  std::string modifier_key() const;
  // Highest-precedence category in the chain (negator > modal > degree_adverb).
  ModifierCategory category() const;
};

// Greedy longest match of inventory entries from the left; the single final
// token is the content word. Returns nullopt for single words and for phrases
// whose leading tokens are not fully covered by inventory entries.
std::optional<PhraseDecomposition> decompose(std::string_view phrase, const ModifierInventory& inventory);

// term surface -> score in [-1, 1]
class ScoredLexicon {
 public:
  using Map = std::map<std::string, double, std::less<>>;

  ScoredLexicon() = default;

  // Throws DataError if the score is outside [-1, 1] or not finite.
  void set(std::string surface, double score);
  std::optional<double> find(std::string_view surface) const;
  bool contains(std::string_view surface) const { return entries_.find(surface) != entries_.end(); }
  double at(std::string_view surface) const;

  const Map& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const ScoredLexicon&, const ScoredLexicon&) = default;

 private:
  Map entries_;
};

// "term<TAB>score" with exactly three decimals; rows sorted by term.
void save_lexicon(const ScoredLexicon& lexicon, const std::filesystem::path& path);
std::string format_score(double score);
// Throws FormatError (with line) for malformed rows or out-of-range scores.
ScoredLexicon load_lexicon(const std::filesystem::path& path);

// Loose "term<TAB>real" table with no range restriction (latent scores for simulation).
std::map<std::string, double, std::less<>> load_score_table(const std::filesystem::path& path);

}  // namespace bwslex
