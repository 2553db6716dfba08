#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bwslex/lexicon.hpp"
#include "bwslex/responses.hpp"
#include "bwslex/tuples.hpp"

namespace bwslex {

struct TermTally {
  std::uint64_t best = 0;
  std::uint64_t worst = 0;
  std::uint64_t appearances = 0;  // responses whose tuple contains the term
};

// Per-term best/worst/appearance counts. Validates every response.
std::map<std::string, TermTally, std::less<>> tally(const std::vector<Response>& responses, const TupleIndex& tuples);

// Counting procedure: (#best - #worst) / #appearances for every term that
// occurs in at least one answered tuple. Throws Error on an empty response
// set and DataError on invalid responses.
ScoredLexicon score(const std::vector<Response>& responses, const TupleIndex& tuples);

struct QualityReport {
  double threshold = 0.70;
  std::map<std::string, double> per_annotator_gold_accuracy;
  std::map<std::string, std::uint64_t> per_annotator_gold_graded;  // graded answers (2 per gold response)
  std::set<std::string> discarded_annotators;
  std::set<std::string> annotators_without_gold;  // kept, flagged
  std::size_t responses_in = 0;
  std::size_t responses_kept = 0;
};

struct FilterResult {
  std::vector<Response> kept;
  QualityReport report;
};

// Gold accuracy = correct graded answers / graded answers, where each gold
// response grades its best and its worst separately. Annotators below
// `threshold` lose all their responses; annotators with no gold answers are
// kept and listed in annotators_without_gold. Throws DataError for responses
// that reference unknown tuples.
FilterResult filter_annotators(const std::vector<Response>& responses, const TupleIndex& tuples, const GoldKey& gold,
                               double threshold = 0.70);

struct MajorityAgreement {
  // answers equal to their question's mode / all answers (2 per response)
  double per_response = 0.0;
  // mean over questions of the fraction of that question's answers equal to the mode
  double per_question = 0.0;
  std::size_t questions = 0;
  std::size_t answers = 0;
};

// Every tuple asks two questions (best, worst). When several answers tie for
// the mode, all of them count as majority answers.
MajorityAgreement majority_agreement(const std::vector<Response>& responses, const TupleIndex& tuples);

struct SplitHalfResult {
  double mean_spearman = 0.0;
  double mean_pearson = 0.0;
  double sd_spearman = 0.0;
  double sd_pearson = 0.0;
  std::vector<double> spearman_per_split;
  std::vector<double> pearson_per_split;
  std::vector<std::string> excluded_tuples;  // fewer than two responses
  std::size_t terms_compared = 0;            // size of the score intersection in the last split
};

// Each split partitions every tuple's responses at random into two halves
// (sizes differ by at most one), scores both halves and correlates the two
// score vectors over the terms scored in both. The split-th partition uses an
// RNG seeded from (seed, split), so results do not depend on split count order.
SplitHalfResult split_half_reliability(const std::vector<Response>& responses, const TupleIndex& tuples,
                                       std::size_t n_splits = 10, std::uint64_t seed = 0);

}  // namespace bwslex
