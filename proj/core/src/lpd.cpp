#include "bwslex/lpd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bwslex/error.hpp"
#include "bwslex/stats.hpp"
#include "text_io.hpp"

namespace bwslex {

std::vector<PairJudgment> infer_pairs(const std::vector<Response>& responses, const TupleIndex& tuples) {
  // key: (first, second) with first < second; value: (first preferred, second preferred)
  std::map<std::pair<std::string, std::string>, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const auto& r : responses) {
    check_response(r, tuples);
    const Tuple4& t = *tuples.find(r.tuple_id);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const std::string& a = std::min(t.items[i], t.items[j]);
        const std::string& b = std::max(t.items[i], t.items[j]);
        const bool a_over_b = r.best == a || r.worst == b;
        const bool b_over_a = r.best == b || r.worst == a;
        if (!a_over_b && !b_over_a) continue;
        auto& c = counts[{a, b}];
        if (a_over_b) ++c.first;
        if (b_over_a) ++c.second;
      }
    }
  }
  std::vector<PairJudgment> out;
  out.reserve(counts.size());
  for (const auto& [key, c] : counts) out.push_back(PairJudgment{key.first, key.second, c.first, c.second});
  return out;
}

namespace {

// Score differences are resolved to 1e-6 of a grid step before windowing, so
// rounding noise in the scores (e.g. after a constant shift) cannot move a
// pair across a window edge or reorder the per-window sums.
constexpr double kTicksPerStep = 1e6;

struct OrientedPair {
  std::int64_t ticks;
  std::size_t input_order;
  std::uint64_t agreeing;
  std::uint64_t total;
  double agreement;
};

}  // namespace

AgreementCurve agreement_curve(const std::vector<PairJudgment>& pairs, const ScoreTable& scores,
                               const CurveOptions& options) {
  if (!(options.grid_step > 0.0)) throw DataError("grid step must be positive");
  if (!(options.window >= 0.0)) throw DataError("window must be non-negative");

  AgreementCurve curve;
  curve.window = options.window;
  curve.grid_step = options.grid_step;
  curve.z = z_for_confidence(options.confidence, options.two_sided);

  std::vector<OrientedPair> oriented;
  oriented.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const auto sa = scores.find(p.hi);
    const auto sb = scores.find(p.lo);
    if (sa == scores.end() || sb == scores.end()) {
      throw DataError("pair ('" + p.hi + "', '" + p.lo + "') has a term missing from the lexicon");
    }
    const std::uint64_t total = p.n_hi_preferred + p.n_lo_preferred;
    if (total == 0) continue;
    const double diff = sa->second - sb->second;
    const std::uint64_t agreeing = diff >= 0.0 ? p.n_hi_preferred : p.n_lo_preferred;
    oriented.push_back(OrientedPair{std::llround(std::abs(diff) / options.grid_step * kTicksPerStep), i, agreeing,
                                    total, static_cast<double>(agreeing) / static_cast<double>(total)});
  }
  if (oriented.empty()) return curve;

  std::sort(oriented.begin(), oriented.end(), [](const OrientedPair& a, const OrientedPair& b) {
    return a.ticks != b.ticks ? a.ticks < b.ticks : a.input_order < b.input_order;
  });
  const std::int64_t step_ticks = static_cast<std::int64_t>(kTicksPerStep);
  const std::int64_t half = std::llround(options.window / options.grid_step * kTicksPerStep);
  const std::int64_t last_k = (oriented.back().ticks + half) / step_ticks;

  std::size_t lo = 0;
  for (std::int64_t k = 0; k <= last_k; ++k) {
    const std::int64_t left = k * step_ticks - half;
    const std::int64_t right = k * step_ticks + half;
    while (lo < oriented.size() && oriented[lo].ticks < left) ++lo;
    CurvePoint point;
    point.d = static_cast<double>(k) * options.grid_step;
    double agreement_sum = 0.0;
    for (std::size_t i = lo; i < oriented.size() && oriented[i].ticks <= right; ++i) {
      ++point.n_pairs;
      point.n_judgments += oriented[i].total;
      point.n_agreeing += oriented[i].agreeing;
      agreement_sum += oriented[i].agreement;
    }
    if (point.n_pairs == 0) continue;
    point.mean_agreement = agreement_sum / static_cast<double>(point.n_pairs);
    point.pooled_agreement = static_cast<double>(point.n_agreeing) / static_cast<double>(point.n_judgments);
    point.lower_bound = wilson_lower_bound(point.n_agreeing, point.n_judgments, curve.z);
    curve.points.push_back(point);
  }
  return curve;
}

AgreementCurve agreement_curve(const std::vector<PairJudgment>& pairs, const ScoredLexicon& lexicon,
                               const CurveOptions& options) {
  ScoreTable table(lexicon.entries().begin(), lexicon.entries().end());
  return agreement_curve(pairs, table, options);
}

LpdResult least_perceptible_difference(const AgreementCurve& curve) {
  LpdResult result;
  if (curve.points.empty()) {
    result.diagnostic = "agreement curve is empty";
    return result;
  }
  std::size_t start = curve.points.size();
  while (start > 0 && curve.points[start - 1].lower_bound > 0.5) --start;
  if (start == curve.points.size()) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "lower bound at the largest populated difference (d = %.4f) is %.4f <= 0.5",
                  curve.points.back().d, curve.points.back().lower_bound);
    result.diagnostic = buf;
    return result;
  }
  result.value = curve.points[start].d;
  return result;
}

void write_curve(const AgreementCurve& curve, const std::filesystem::path& path) {
  detail::OutputFile file(path);
  auto& out = file.stream();
  out << "d\tmean_agreement\tn_pairs\tn_judgments\tlower_bound\n";
  char buf[160];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.4f\t%.6f\t%zu\t%llu\t%.6f\n", p.d, p.mean_agreement, p.n_pairs,
                  static_cast<unsigned long long>(p.n_judgments), p.lower_bound);
    out << buf;
  }
  file.close();
}

}  // namespace bwslex
