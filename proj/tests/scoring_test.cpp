#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bwslex/design.hpp"
#include "bwslex/error.hpp"
#include "bwslex/scoring.hpp"
#include "oracles/oracles.hpp"
#include "test_support.hpp"

using namespace bwslex;

namespace {

Response resp(std::string id, std::string annotator, std::string tuple, std::string best, std::string worst) {
  return Response{std::move(id), std::move(annotator), std::move(tuple), std::move(best), std::move(worst), 0};
}

// Eight tuples; "favor" appears in all of them.
std::vector<Tuple4> eight_tuples() {
  std::vector<Tuple4> t;
  for (int i = 0; i < 8; ++i) {
    const std::string s = std::to_string(i);
    t.push_back({"t" + s, {"favor", "a" + s, "b" + s, "c" + s}});
  }
  return t;
}

// Random valid responses over a random design.
std::vector<Response> random_responses(const std::vector<Tuple4>& tuples, std::size_t count, std::mt19937_64& gen) {
  std::vector<Response> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& t = tuples[gen() % tuples.size()];
    const std::size_t b = gen() % 4;
    std::size_t w = gen() % 3;
    if (w >= b) ++w;
    out.push_back(resp("r" + std::to_string(i), "ann" + std::to_string(gen() % 7), t.tuple_id, t.items[b], t.items[w]));
  }
  return out;
}

}  // namespace

TEST(Score, CountingExample) {
  // 3 best, 2 worst over 8 appearances.
  const auto tuples = eight_tuples();
  const TupleIndex index(tuples);
  std::vector<Response> rs;
  for (int i = 0; i < 8; ++i) {
    const std::string s = std::to_string(i);
    if (i < 3)
      rs.push_back(resp("r" + s, "x", "t" + s, "favor", "a" + s));
    else if (i < 5)
      rs.push_back(resp("r" + s, "x", "t" + s, "a" + s, "favor"));
    else
      rs.push_back(resp("r" + s, "x", "t" + s, "a" + s, "b" + s));
  }
  EXPECT_DOUBLE_EQ(score(rs, index).at("favor"), 0.125);
}

TEST(Score, AlwaysBestAndNeverChosen) {
  const auto tuples = eight_tuples();
  const TupleIndex index(tuples);
  std::vector<Response> rs;
  for (int i = 0; i < 8; ++i) {
    const std::string s = std::to_string(i);
    rs.push_back(resp("r" + s, "x", "t" + s, "favor", "a" + s));
  }
  const auto lex = score(rs, index);
  EXPECT_EQ(lex.at("favor"), 1.0);
  EXPECT_EQ(lex.at("b3"), 0.0);
  EXPECT_EQ(lex.at("a3"), -1.0);
}

TEST(Score, EmptyInputThrows) {
  const auto tuples = eight_tuples();
  EXPECT_THROW(score({}, TupleIndex(tuples)), Error);
}

TEST(Score, InvalidResponsesThrow) {
  const auto tuples = eight_tuples();
  const TupleIndex index(tuples);
  EXPECT_THROW(score({resp("r", "x", "nope", "favor", "a0")}, index), DataError);
  EXPECT_THROW(score({resp("r", "x", "t0", "favor", "favor")}, index), DataError);
  EXPECT_THROW(score({resp("r", "x", "t0", "favor", "a1")}, index), DataError);
}

TEST(Score, PropertyMatchesBruteForceRecount) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tuples = generate_design(testing_support::numbered_terms(20 + gen() % 40), 2, gen());
    const TupleIndex index(tuples);
    const auto rs = random_responses(tuples, 1 + gen() % 300, gen);
    const auto lex = score(rs, index);
    const auto expected = oracle::recount_scores_as_double(rs, tuples);
    ASSERT_EQ(lex.size(), expected.size());
    for (const auto& [term, value] : expected) EXPECT_EQ(lex.at(term), value) << term;
  }
}

TEST(Score, PropertyInvariantUnderOrderAndRelabeling) {
  std::mt19937_64 gen(12);
  const auto tuples = generate_design(testing_support::numbered_terms(60), 2, 3);
  const TupleIndex index(tuples);
  auto rs = random_responses(tuples, 400, gen);
  const auto base = score(rs, index);
  std::shuffle(rs.begin(), rs.end(), gen);
  for (auto& r : rs) {
    r.response_id = "z" + r.response_id;
    r.annotator_id = "other-" + r.annotator_id;
  }
  EXPECT_EQ(score(rs, index), base);
}

TEST(Score, PropertyNetCountsSumToZero) {
  std::mt19937_64 gen(13);
  const auto tuples = generate_design(testing_support::numbered_terms(40), 2, 4);
  const TupleIndex index(tuples);
  const auto rs = random_responses(tuples, 250, gen);
  std::int64_t net = 0;
  std::uint64_t appearances = 0;
  for (const auto& [term, t] : tally(rs, index)) {
    net += static_cast<std::int64_t>(t.best) - static_cast<std::int64_t>(t.worst);
    appearances += t.appearances;
  }
  EXPECT_EQ(net, 0);
  EXPECT_EQ(appearances, 4 * rs.size());
}

class FilterTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (int i = 0; i < 10; ++i) {
      const std::string s = std::to_string(i);
      tuples.push_back({"g" + s, {"w" + s, "x" + s, "y" + s, "z" + s}});
      gold["g" + s] = {"w" + s, "z" + s};
    }
    tuples.push_back({"plain", {"p", "q", "r", "s"}});
    index = TupleIndex(tuples);
  }

  // `correct` of the 20 graded answers are right.
  std::vector<Response> annotator(const std::string& name, int correct) {
    std::vector<Response> rs;
    for (int i = 0; i < 10; ++i) {
      const std::string s = std::to_string(i);
      const bool best_ok = correct > 0;
      correct -= best_ok;
      const bool worst_ok = correct > 0;
      correct -= worst_ok;
      rs.push_back(resp(name + s, name, "g" + s, best_ok ? "w" + s : "x" + s, worst_ok ? "z" + s : "y" + s));
    }
    rs.push_back(resp(name + "p", name, "plain", "p", "q"));
    return rs;
  }

  std::vector<Tuple4> tuples;
  GoldKey gold;
  TupleIndex index;
};

TEST_F(FilterTest, AccuracyBelowThresholdDiscardsAllResponses) {
  auto rs = annotator("low", 13);  // 0.65
  const auto good = annotator("good", 18);
  rs.insert(rs.end(), good.begin(), good.end());
  const auto result = filter_annotators(rs, index, gold);
  EXPECT_DOUBLE_EQ(result.report.per_annotator_gold_accuracy.at("low"), 0.65);
  EXPECT_EQ(result.report.per_annotator_gold_graded.at("low"), 20u);
  EXPECT_EQ(result.report.discarded_annotators, std::set<std::string>{"low"});
  EXPECT_EQ(result.kept.size(), 11u);
  for (const auto& r : result.kept) EXPECT_EQ(r.annotator_id, "good");
  EXPECT_EQ(result.report.responses_in, 22u);
  EXPECT_EQ(result.report.responses_kept, 11u);
}

TEST_F(FilterTest, ExactlyAtThresholdIsKept) {
  const auto result = filter_annotators(annotator("edge", 14), index, gold);
  EXPECT_TRUE(result.report.discarded_annotators.empty());
  EXPECT_EQ(result.kept.size(), 11u);
}

TEST_F(FilterTest, AnnotatorWithoutGoldIsKeptAndFlagged) {
  const std::vector<Response> rs = {resp("n1", "nogold", "plain", "p", "s")};
  const auto result = filter_annotators(rs, index, gold);
  EXPECT_EQ(result.kept.size(), 1u);
  EXPECT_EQ(result.report.annotators_without_gold, std::set<std::string>{"nogold"});
}

TEST_F(FilterTest, ThresholdExtremes) {
  auto rs = annotator("a", 0);
  const auto b = annotator("b", 20);
  rs.insert(rs.end(), b.begin(), b.end());
  EXPECT_EQ(filter_annotators(rs, index, gold, 0.0).kept.size(), rs.size());
  EXPECT_TRUE(filter_annotators(rs, index, gold, 1.0 + 1e-9).kept.empty());
}

TEST_F(FilterTest, UnknownTupleThrows) {
  EXPECT_THROW(filter_annotators({resp("r", "a", "missing", "p", "q")}, index, gold), DataError);
}

TEST(Majority, UnanimousAndSplit) {
  const std::vector<Tuple4> tuples = {{"t", {"a", "b", "c", "d"}}};
  const TupleIndex index(tuples);
  // best: a,a,b  worst: d,d,d
  const std::vector<Response> rs = {resp("1", "x", "t", "a", "d"), resp("2", "y", "t", "a", "d"),
                                    resp("3", "z", "t", "b", "d")};
  const auto m = majority_agreement(rs, index);
  EXPECT_EQ(m.questions, 2u);
  EXPECT_EQ(m.answers, 6u);
  EXPECT_DOUBLE_EQ(m.per_response, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.per_question, (2.0 / 3.0 + 1.0) / 2.0);
}

TEST(Majority, TiedModesAllCount) {
  const std::vector<Tuple4> tuples = {{"t", {"a", "b", "c", "d"}}};
  const TupleIndex index(tuples);
  const std::vector<Response> rs = {resp("1", "x", "t", "a", "c"), resp("2", "y", "t", "b", "d")};
  const auto m = majority_agreement(rs, index);
  EXPECT_DOUBLE_EQ(m.per_response, 1.0);
  EXPECT_DOUBLE_EQ(m.per_question, 1.0);
}

TEST(SplitHalf, IdenticalAnnotatorsGiveOne) {
  const auto tuples = generate_design(testing_support::numbered_terms(40), 2, 8);
  const TupleIndex index(tuples);
  std::vector<Response> rs;
  for (const auto& t : tuples) {
    auto sorted = t.items;
    std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
      return std::stoi(a.substr(4)) < std::stoi(b.substr(4));
    });
    for (int a = 0; a < 4; ++a)
      rs.push_back(resp(t.tuple_id + "-" + std::to_string(a), "a" + std::to_string(a), t.tuple_id, sorted[3], sorted[0]));
  }
  const auto r = split_half_reliability(rs, index, 10, 1);
  EXPECT_EQ(r.spearman_per_split.size(), 10u);
  EXPECT_EQ(r.mean_spearman, 1.0);
  EXPECT_EQ(r.mean_pearson, 1.0);
  EXPECT_EQ(r.sd_spearman, 0.0);
  EXPECT_TRUE(r.excluded_tuples.empty());
  EXPECT_EQ(r.terms_compared, 40u);
}

TEST(SplitHalf, SingleResponseTuplesAreExcludedAndSeedIsDeterministic) {
  std::mt19937_64 gen(5);
  const auto tuples = generate_design(testing_support::numbered_terms(30), 2, 9);
  const TupleIndex index(tuples);
  std::vector<Response> rs;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const int n = i == 0 ? 1 : 4;
    for (int a = 0; a < n; ++a) {
      const auto& t = tuples[i];
      const std::size_t b = gen() % 4;
      rs.push_back(resp(t.tuple_id + std::to_string(a), "a", t.tuple_id, t.items[b], t.items[(b + 1) % 4]));
    }
  }
  const auto r1 = split_half_reliability(rs, index, 5, 77);
  const auto r2 = split_half_reliability(rs, index, 5, 77);
  EXPECT_EQ(r1.excluded_tuples, std::vector<std::string>{tuples[0].tuple_id});
  EXPECT_EQ(r1.spearman_per_split, r2.spearman_per_split);
  // A longer run shares its prefix.
  const auto r3 = split_half_reliability(rs, index, 8, 77);
  EXPECT_TRUE(std::equal(r1.spearman_per_split.begin(), r1.spearman_per_split.end(), r3.spearman_per_split.begin()));
}
