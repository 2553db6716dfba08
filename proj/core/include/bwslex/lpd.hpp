#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bwslex/lexicon.hpp"
#include "bwslex/responses.hpp"
#include "bwslex/tuples.hpp"

namespace bwslex {

// Directed preference counts for an unordered term pair. `hi`/`lo` here are
// only the lexicographic order of the surfaces; agreement_curve reorients by score.
struct PairJudgment {
  std::string hi;
  std::string lo;
  std::uint64_t n_hi_preferred = 0;
  std::uint64_t n_lo_preferred = 0;

  friend bool operator==(const PairJudgment&, const PairJudgment&) = default;
};

// For each response and each pair {a, b} of its tuple: a is preferred over b
// when a is best or b is worst (one count even when both hold); pairs with
// neither term chosen contribute nothing. So each response yields 5 counts.
std::vector<PairJudgment> infer_pairs(const std::vector<Response>& responses, const TupleIndex& tuples);

struct CurvePoint {
  double d = 0.0;
  double mean_agreement = 0.0;  // mean of per-pair agreements in the window
  std::size_t n_pairs = 0;
  std::uint64_t n_judgments = 0;
  std::uint64_t n_agreeing = 0;
  double pooled_agreement = 0.0;  // n_agreeing / n_judgments
  double lower_bound = 0.0;       // Wilson lower limit on the pooled counts
};

struct AgreementCurve {
  std::vector<CurvePoint> points;  // ascending d; empty windows omitted
  double window = 0.01;
  double grid_step = 0.001;
  double z = 0.0;
};

struct CurveOptions {
  double window = 0.01;
  double grid_step = 0.001;
  double confidence = 0.999;
  bool two_sided = false;
};

using ScoreTable = std::map<std::string, double, std::less<>>;

// Orients every pair so that d = score(hi) - score(lo) >= 0 and averages the
// per-pair agreement n_hi / (n_hi + n_lo) over pairs whose d lies within
// +-window of each grid point k * grid_step. Pairs without judgments are
// skipped. Differences are resolved to 1e-6 of a grid step before windowing,
// so the curve depends only on score differences. Throws DataError naming the
// pair if a term is missing from `scores`.
AgreementCurve agreement_curve(const std::vector<PairJudgment>& pairs, const ScoreTable& scores,
                               const CurveOptions& options = {});
AgreementCurve agreement_curve(const std::vector<PairJudgment>& pairs, const ScoredLexicon& lexicon,
                               const CurveOptions& options = {});

struct LpdResult {
  std::optional<double> value;
  std::string diagnostic;
};

// Smallest grid d such that the lower bound exceeds 0.5 there and at every
// populated grid point beyond it.
LpdResult least_perceptible_difference(const AgreementCurve& curve);

// TSV with header: d, mean_agreement, n_pairs, n_judgments, lower_bound.
void write_curve(const AgreementCurve& curve, const std::filesystem::path& path);

}  // namespace bwslex
