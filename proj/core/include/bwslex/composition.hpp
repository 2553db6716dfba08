#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwslex/lexicon.hpp"
#include "bwslex/stats.hpp"

namespace bwslex {

// A phrase "mod w" next to its content word w.
struct ModifierPair {
  std::string phrase;
  std::string content;
  std::string modifier_key;  // full modifier chain, e.g. "would be very"
  ModifierCategory category;
  std::size_t chain_length = 1;
  double phrase_score = 0.0;
  double content_score = 0.0;

  double diff() const noexcept { return phrase_score - content_score; }
};

struct PairBuild {
  std::vector<ModifierPair> pairs;
  std::vector<std::string> missing_content;  // phrases whose content word is not in the lexicon
  std::vector<std::string> undecomposable;   // multi-word terms the inventory cannot cover
};

// One pair per decomposable multi-word lexicon entry whose content word is
// also in the lexicon. Chain category follows negator > modal > degree_adverb.
PairBuild build_pairs(const ScoredLexicon& lexicon, const ModifierInventory& inventory);

enum class Polarity { on_positive, on_negative };
std::string_view to_string(Polarity p) noexcept;

enum class PolarityFilter { all, positive, negative };

struct GroupImpactRow {
  std::string group;  // category name or modifier key
  bool is_category = true;
  ModifierCategory category;
  Polarity polarity;
  double avg_diff = 0.0;  // signed mean; mean |diff| for degree adverbs
  std::size_t n_pairs = 0;
  std::size_t n_up = 0;
  std::size_t n_down = 0;
  std::size_t n_within() const noexcept { return n_pairs - n_up - n_down; }
};

struct ImpactOptions {
  double lpd = 0.069;
  double pos_threshold = 0.3;
  // Per-modifier rows need at least this many pairs.
  std::size_t min_pairs = 5;
  // Restrict per-modifier rows to chains made of a single inventory entry.
  bool single_entry_chains_only = false;
};

// Scores come from a three-decimal lexicon, so up/down use a 1e-9 slack:
// diff >= lpd (and > 0) is up, diff <= -lpd (and < 0) is down. Pairs whose
// content word is inside (-pos_threshold, pos_threshold) are excluded.
// Category rows come first (negator, modal, degree_adverb; positive then
// negative), then per-modifier rows ordered by polarity and avg_diff.
std::vector<GroupImpactRow> group_impact(const std::vector<ModifierPair>& pairs, const ImpactOptions& options = {});

enum class FitScope { global, per_category, per_modifier };

struct ShiftFit {
  std::string scope;     // "global", "category" or "modifier"
  std::string polarity;  // "all", "on_positive" or "on_negative"
  std::string group;     // "all", a category name, or a modifier key
  double b = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n = 0;
};

struct ShiftFitResult {
  std::vector<ShiftFit> fits;
  std::vector<std::string> diagnostics;  // scopes skipped for lack of data
};

// Least-squares shift for phrase = content - sign(content) * b:
// b = sum s_i (c_i - p_i) / sum s_i^2 with s_i = sign(c_i).
ShiftFitResult fit_fixed_shift(const std::vector<ModifierPair>& pairs, FitScope scope,
                               PolarityFilter polarity = PolarityFilter::all);

struct ErrorSummary {
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n = 0;
};

// phrase - (-content)
double reversal_residual(const ModifierPair& pair) noexcept;

// Residuals of the reversing-polarity model over negator pairs matching the filter.
ErrorSummary evaluate_reversal(const std::vector<ModifierPair>& pairs, PolarityFilter polarity = PolarityFilter::all);

// OLS of phrase_score on content_score over the pairs of one category.
// Throws DataError when fewer than two pairs or all content scores are equal.
LineFit fit_group_line(const std::vector<ModifierPair>& pairs, ModifierCategory group);

// positive: content >= threshold and > 0; negative: content <= -threshold and < 0.
bool passes(const ModifierPair& pair, PolarityFilter polarity, double threshold = 0.0) noexcept;

struct AnalysisReport {
  std::vector<GroupImpactRow> rows;                 // all chains
  std::vector<GroupImpactRow> single_entry_rows;    // single-entry chains only
  std::vector<ShiftFit> shift_fits;
  std::vector<std::pair<std::string, ErrorSummary>> reversal;  // label -> summary
  std::vector<std::pair<std::string, LineFit>> group_lines;    // category -> line
  std::vector<std::string> diagnostics;
  std::vector<ModifierPair> pairs;
  ImpactOptions options;
};

AnalysisReport analyze(const ScoredLexicon& lexicon, const ModifierInventory& inventory, const ImpactOptions& options);

// Writes into `dir`:
//   group_impact.tsv         category rows (group, polarity, avg_diff, n_pairs, n_up, n_down)
//   negators.tsv, modals.tsv, degree_adverbs.tsv   per-modifier rows, same columns
//   *_single.tsv             the same restricted to single-entry chains
//   shift_fits.tsv           group, scope, b, mae, rmse, n
//   scatter.tsv              content_score, phrase_score, modifier_key, category
//   report.txt               human-readable summary
void emit_report(const AnalysisReport& report, const std::filesystem::path& dir);

}  // namespace bwslex
