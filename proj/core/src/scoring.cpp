#include "bwslex/scoring.hpp"

#include <algorithm>
#include <unordered_map>

#include "bwslex/error.hpp"
#include "bwslex/rng.hpp"
#include "bwslex/stats.hpp"

namespace bwslex {

std::map<std::string, TermTally, std::less<>> tally(const std::vector<Response>& responses, const TupleIndex& tuples) {
  std::map<std::string, TermTally, std::less<>> counts;
  for (const auto& r : responses) {
    check_response(r, tuples);
    const Tuple4& t = *tuples.find(r.tuple_id);
    for (const auto& item : t.items) ++counts[item].appearances;
    ++counts[r.best].best;
    ++counts[r.worst].worst;
  }
  return counts;
}

ScoredLexicon score(const std::vector<Response>& responses, const TupleIndex& tuples) {
  if (responses.empty()) throw Error("cannot score an empty response set");
  ScoredLexicon lex;
  for (const auto& [term, c] : tally(responses, tuples)) {
    const double net = static_cast<double>(c.best) - static_cast<double>(c.worst);
    lex.set(term, net / static_cast<double>(c.appearances));
  }
  return lex;
}

FilterResult filter_annotators(const std::vector<Response>& responses, const TupleIndex& tuples, const GoldKey& gold,
                               double threshold) {
  FilterResult result;
  result.report.threshold = threshold;
  result.report.responses_in = responses.size();

  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> graded;  // correct, total
  std::set<std::string> annotators;
  for (const auto& r : responses) {
    if (tuples.find(r.tuple_id) == nullptr) {
      throw DataError("response " + r.response_id + " references unknown tuple '" + r.tuple_id + "'");
    }
    annotators.insert(r.annotator_id);
    const auto g = gold.find(r.tuple_id);
    if (g == gold.end()) continue;
    auto& [correct, total] = graded[r.annotator_id];
    total += 2;
    correct += (r.best == g->second.expected_best) + (r.worst == g->second.expected_worst);
  }

  for (const auto& a : annotators) {
    const auto it = graded.find(a);
    if (it == graded.end()) {
      result.report.annotators_without_gold.insert(a);
      continue;
    }
    const auto [correct, total] = it->second;
    const double accuracy = static_cast<double>(correct) / static_cast<double>(total);
    result.report.per_annotator_gold_accuracy[a] = accuracy;
    result.report.per_annotator_gold_graded[a] = total;
    if (accuracy < threshold) result.report.discarded_annotators.insert(a);
  }

  for (const auto& r : responses) {
    if (!result.report.discarded_annotators.contains(r.annotator_id)) result.kept.push_back(r);
  }
  result.report.responses_kept = result.kept.size();
  return result;
}

MajorityAgreement majority_agreement(const std::vector<Response>& responses, const TupleIndex& tuples) {
  // question = (tuple position, 0 best / 1 worst) -> answer -> count
  std::map<std::pair<std::size_t, int>, std::map<std::string, std::size_t>> questions;
  for (const auto& r : responses) {
    const std::size_t pos = tuples.position(r.tuple_id);
    ++questions[{pos, 0}][r.best];
    ++questions[{pos, 1}][r.worst];
  }
  MajorityAgreement out;
  std::size_t matched = 0;
  double fraction_sum = 0.0;
  for (const auto& [q, answers] : questions) {
    std::size_t mode = 0, total = 0;
    for (const auto& [a, c] : answers) {
      mode = std::max(mode, c);
      total += c;
    }
    std::size_t at_mode = 0;
    for (const auto& [a, c] : answers)
      if (c == mode) at_mode += c;
    matched += at_mode;
    out.answers += total;
    fraction_sum += static_cast<double>(at_mode) / static_cast<double>(total);
  }
  out.questions = questions.size();
  if (out.answers > 0) out.per_response = static_cast<double>(matched) / static_cast<double>(out.answers);
  if (out.questions > 0) out.per_question = fraction_sum / static_cast<double>(out.questions);
  return out;
}

SplitHalfResult split_half_reliability(const std::vector<Response>& responses, const TupleIndex& tuples,
                                       std::size_t n_splits, std::uint64_t seed) {
  SplitHalfResult result;
  std::vector<std::vector<std::size_t>> by_tuple(tuples.tuples().size());
  for (std::size_t i = 0; i < responses.size(); ++i) {
    check_response(responses[i], tuples);
    by_tuple[tuples.position(responses[i].tuple_id)].push_back(i);
  }
  for (std::size_t t = 0; t < by_tuple.size(); ++t) {
    if (by_tuple[t].size() == 1) result.excluded_tuples.push_back(tuples.tuples()[t].tuple_id);
  }

  for (std::size_t split = 0; split < n_splits; ++split) {
    Rng rng(stream_key(seed, {split}));
    std::vector<Response> half_a, half_b;
    for (auto members : by_tuple) {
      if (members.size() < 2) continue;
      rng.shuffle(std::span(members));
      const std::size_t cut = members.size() / 2;
      for (std::size_t k = 0; k < members.size(); ++k) (k < cut ? half_a : half_b).push_back(responses[members[k]]);
    }
    if (half_a.empty()) throw DataError("split-half reliability needs at least one tuple with two responses");
    const ScoredLexicon a = score(half_a, tuples);
    const ScoredLexicon b = score(half_b, tuples);
    std::vector<double> xa, xb;
    for (const auto& [term, s] : a.entries()) {
      if (const auto other = b.find(term)) {
        xa.push_back(s);
        xb.push_back(*other);
      }
    }
    result.terms_compared = xa.size();
    result.spearman_per_split.push_back(spearman(xa, xb));
    result.pearson_per_split.push_back(pearson(xa, xb));
  }
  result.mean_spearman = mean(result.spearman_per_split);
  result.mean_pearson = mean(result.pearson_per_split);
  result.sd_spearman = sample_stddev(result.spearman_per_split);
  result.sd_pearson = sample_stddev(result.pearson_per_split);
  return result;
}

}  // namespace bwslex
