#include "bwslex/composition.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bwslex/error.hpp"

namespace bwslex {

namespace {

constexpr double kScoreSlack = 1e-9;

constexpr ModifierCategory kCategories[] = {ModifierCategory::negator, ModifierCategory::modal,
                                            ModifierCategory::degree_adverb};

double sign(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

std::string_view polarity_label(PolarityFilter f) noexcept {
  switch (f) {
    case PolarityFilter::all: return "all";
    case PolarityFilter::positive: return "on_positive";
    case PolarityFilter::negative: return "on_negative";
  }
  return "all";
}

GroupImpactRow summarize(std::string group, bool is_category, ModifierCategory category, Polarity polarity,
                         const std::vector<const ModifierPair*>& members, double lpd) {
  GroupImpactRow row;
  row.group = std::move(group);
  row.is_category = is_category;
  row.category = category;
  row.polarity = polarity;
  row.n_pairs = members.size();
  const bool absolute = category == ModifierCategory::degree_adverb;
  double sum = 0.0;
  for (const auto* p : members) {
    const double d = p->diff();
    sum += absolute ? std::abs(d) : d;
    if (d > 0.0 && d >= lpd - kScoreSlack) ++row.n_up;
    if (d < 0.0 && d <= -lpd + kScoreSlack) ++row.n_down;
  }
  row.avg_diff = members.empty() ? 0.0 : sum / static_cast<double>(members.size());
  return row;
}

ShiftFit fit_shift(std::string scope, PolarityFilter polarity, std::string group,
                   const std::vector<const ModifierPair*>& members) {
  ShiftFit fit;
  fit.scope = std::move(scope);
  fit.polarity = std::string(polarity_label(polarity));
  fit.group = std::move(group);
  fit.n = members.size();
  double num = 0.0, den = 0.0;
  for (const auto* p : members) {
    const double s = sign(p->content_score);
    num += s * (p->content_score - p->phrase_score);
    den += s * s;
  }
  fit.b = num / den;
  double abs_sum = 0.0, sq_sum = 0.0;
  for (const auto* p : members) {
    const double predicted = p->content_score - sign(p->content_score) * fit.b;
    const double r = p->phrase_score - predicted;
    abs_sum += std::abs(r);
    sq_sum += r * r;
  }
  fit.mae = abs_sum / static_cast<double>(members.size());
  fit.rmse = std::sqrt(sq_sum / static_cast<double>(members.size()));
  return fit;
}

}  // namespace

std::string_view to_string(Polarity p) noexcept { return p == Polarity::on_positive ? "on_positive" : "on_negative"; }

bool passes(const ModifierPair& pair, PolarityFilter polarity, double threshold) noexcept {
  const double c = pair.content_score;
  switch (polarity) {
    case PolarityFilter::all: return true;
    case PolarityFilter::positive: return c > 0.0 && c >= threshold;
    case PolarityFilter::negative: return c < 0.0 && c <= -threshold;
  }
  return false;
}

PairBuild build_pairs(const ScoredLexicon& lexicon, const ModifierInventory& inventory) {
  PairBuild out;
  for (const auto& [term, score] : lexicon.entries()) {
    if (term.find(' ') == std::string::npos) continue;
    const auto parts = decompose(term, inventory);
    if (!parts) {
      out.undecomposable.push_back(term);
      continue;
    }
    const auto content = lexicon.find(parts->content_word);
    if (!content) {
      out.missing_content.push_back(term);
      continue;
    }
    ModifierPair pair;
    pair.phrase = term;
    pair.content = parts->content_word;
    pair.modifier_key = parts->modifier_key();
    pair.category = parts->category();
    pair.chain_length = parts->modifier_chain.size();
    pair.phrase_score = score;
    pair.content_score = *content;
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

std::vector<GroupImpactRow> group_impact(const std::vector<ModifierPair>& pairs, const ImpactOptions& options) {
  std::vector<GroupImpactRow> rows;
  const Polarity polarities[] = {Polarity::on_positive, Polarity::on_negative};

  auto polarity_of = [&](const ModifierPair& p) -> std::optional<Polarity> {
    if (passes(p, PolarityFilter::positive, options.pos_threshold)) return Polarity::on_positive;
    if (passes(p, PolarityFilter::negative, options.pos_threshold)) return Polarity::on_negative;
    return std::nullopt;
  };

  for (const auto category : kCategories) {
    for (const auto polarity : polarities) {
      std::vector<const ModifierPair*> members;
      for (const auto& p : pairs)
        if (p.category == category && polarity_of(p) == polarity) members.push_back(&p);
      rows.push_back(summarize(std::string(to_string(category)), true, category, polarity, members, options.lpd));
    }
  }

  for (const auto category : kCategories) {
    for (const auto polarity : polarities) {
      std::map<std::string, std::vector<const ModifierPair*>> by_key;
      for (const auto& p : pairs) {
        if (p.category != category || polarity_of(p) != polarity) continue;
        if (options.single_entry_chains_only && p.chain_length != 1) continue;
        by_key[p.modifier_key].push_back(&p);
      }
      std::vector<GroupImpactRow> keyed;
      for (const auto& [key, members] : by_key) {
        if (members.size() < options.min_pairs) continue;
        keyed.push_back(summarize(key, false, category, polarity, members, options.lpd));
      }
      std::stable_sort(keyed.begin(), keyed.end(), [](const GroupImpactRow& a, const GroupImpactRow& b) {
        return std::abs(a.avg_diff) > std::abs(b.avg_diff);
      });
      rows.insert(rows.end(), keyed.begin(), keyed.end());
    }
  }
  return rows;
}

ShiftFitResult fit_fixed_shift(const std::vector<ModifierPair>& pairs, FitScope scope, PolarityFilter polarity) {
  ShiftFitResult result;
  std::map<std::string, std::vector<const ModifierPair*>> groups;
  std::string scope_name;
  for (const auto& p : pairs) {
    if (!passes(p, polarity)) continue;
    switch (scope) {
      case FitScope::global: groups["all"].push_back(&p); break;
      case FitScope::per_category: groups[std::string(to_string(p.category))].push_back(&p); break;
      case FitScope::per_modifier: groups[p.modifier_key].push_back(&p); break;
    }
  }
  switch (scope) {
    case FitScope::global: scope_name = "global"; break;
    case FitScope::per_category: scope_name = "category"; break;
    case FitScope::per_modifier: scope_name = "modifier"; break;
  }
  if (groups.empty()) {
    result.diagnostics.push_back("no pairs to fit for scope " + scope_name + " (" +
                                 std::string(polarity_label(polarity)) + ")");
  }
  for (const auto& [group, members] : groups) {
    const bool informative = std::any_of(members.begin(), members.end(),
                                         [](const ModifierPair* p) { return p->content_score != 0.0; });
    if (!informative) {
      result.diagnostics.push_back("shift undefined for '" + group + "': all content scores are zero");
      continue;
    }
    result.fits.push_back(fit_shift(scope_name, polarity, group, members));
  }
  return result;
}

double reversal_residual(const ModifierPair& pair) noexcept { return pair.phrase_score - (-pair.content_score); }

ErrorSummary evaluate_reversal(const std::vector<ModifierPair>& pairs, PolarityFilter polarity) {
  ErrorSummary out;
  double abs_sum = 0.0, sq_sum = 0.0;
  for (const auto& p : pairs) {
    if (p.category != ModifierCategory::negator || !passes(p, polarity)) continue;
    const double r = reversal_residual(p);
    abs_sum += std::abs(r);
    sq_sum += r * r;
    ++out.n;
  }
  if (out.n > 0) {
    out.mae = abs_sum / static_cast<double>(out.n);
    out.rmse = std::sqrt(sq_sum / static_cast<double>(out.n));
  }
  return out;
}

LineFit fit_group_line(const std::vector<ModifierPair>& pairs, ModifierCategory group) {
  std::vector<double> x, y;
  for (const auto& p : pairs) {
    if (p.category != group) continue;
    x.push_back(p.content_score);
    y.push_back(p.phrase_score);
  }
  return ordinary_least_squares(x, y);
}

AnalysisReport analyze(const ScoredLexicon& lexicon, const ModifierInventory& inventory, const ImpactOptions& options) {
  AnalysisReport report;
  report.options = options;
  PairBuild built = build_pairs(lexicon, inventory);
  for (const auto& p : built.missing_content) report.diagnostics.push_back("content word not in lexicon: " + p);
  for (const auto& p : built.undecomposable) report.diagnostics.push_back("no modifier decomposition: " + p);

  // Near-neutral content words are left out of every analysis.
  for (auto& p : built.pairs)
    if (passes(p, PolarityFilter::positive, options.pos_threshold) ||
        passes(p, PolarityFilter::negative, options.pos_threshold))
      report.pairs.push_back(std::move(p));

  report.rows = group_impact(report.pairs, options);
  ImpactOptions single = options;
  single.single_entry_chains_only = true;
  for (auto& row : group_impact(report.pairs, single))
    if (!row.is_category) report.single_entry_rows.push_back(std::move(row));

  for (const auto polarity : {PolarityFilter::positive, PolarityFilter::negative}) {
    for (const auto scope : {FitScope::global, FitScope::per_category, FitScope::per_modifier}) {
      auto fits = fit_fixed_shift(report.pairs, scope, polarity);
      report.shift_fits.insert(report.shift_fits.end(), fits.fits.begin(), fits.fits.end());
      report.diagnostics.insert(report.diagnostics.end(), fits.diagnostics.begin(), fits.diagnostics.end());
    }
  }
  for (const auto polarity : {PolarityFilter::all, PolarityFilter::positive, PolarityFilter::negative}) {
    report.reversal.emplace_back(std::string(polarity_label(polarity)), evaluate_reversal(report.pairs, polarity));
  }
  for (const auto category : kCategories) {
    try {
      report.group_lines.emplace_back(std::string(to_string(category)), fit_group_line(report.pairs, category));
    } catch (const DataError& e) {
      report.diagnostics.push_back("no group line for " + std::string(to_string(category)) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace bwslex
