#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bwslex/design.hpp"
#include "bwslex/error.hpp"
#include "test_support.hpp"

using namespace bwslex;
using testing_support::numbered_terms;
using testing_support::TempDir;

namespace {

// Independent check of the design invariants.
void expect_valid(const std::vector<Tuple4>& tuples, const std::vector<Term>& terms, std::size_t factor,
                  std::size_t cap) {
  ASSERT_EQ(tuples.size(), factor * terms.size());
  std::map<std::string, std::size_t> counts;
  std::map<std::pair<std::string, std::string>, std::size_t> pairs;
  std::set<std::vector<std::string>> sets;
  std::set<std::string> ids;
  std::set<std::string> known;
  for (const auto& t : terms) known.insert(t.surface);
  for (const auto& tuple : tuples) {
    EXPECT_TRUE(ids.insert(tuple.tuple_id).second);
    std::vector<std::string> s(tuple.items.begin(), tuple.items.end());
    std::sort(s.begin(), s.end());
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end()) << "repeated item in " << tuple.tuple_id;
    EXPECT_TRUE(sets.insert(s).second) << "duplicate set " << tuple.tuple_id;
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_TRUE(known.count(s[i]));
      ++counts[s[i]];
      for (std::size_t j = i + 1; j < 4; ++j) ++pairs[{s[i], s[j]}];
    }
  }
  for (const auto& t : terms) EXPECT_EQ(counts[t.surface], 4 * factor) << t.surface;
  for (const auto& [p, c] : pairs) EXPECT_LE(c, cap) << p.first << "," << p.second;
}

}  // namespace

TEST(Design, EightTermsFactorTwo) {
  const auto terms = numbered_terms(8);
  DesignOptions opt;
  opt.pair_cap = 4;
  const auto tuples = generate_design(terms, 2, 42, opt);
  ASSERT_EQ(tuples.size(), 16u);
  expect_valid(tuples, terms, 2, 4);
  EXPECT_TRUE(validate_design(tuples, terms, 4).ok());
}

TEST(Design, EightTermsWithDefaultCapIsInfeasible) {
  // Each term needs 24 partner slots over 7 partners, so some pair must meet 4 times.
  EXPECT_EQ(pair_cooccurrence_lower_bound(8, 2), 4u);
  EXPECT_THROW(generate_design(numbered_terms(8), 2, 42), DesignInfeasible);
}

TEST(Design, TooFewTermsIsInfeasible) {
  EXPECT_THROW(generate_design(numbered_terms(3), 2, 1), DesignInfeasible);
  DesignOptions opt;
  opt.pair_cap = 100;
  // Only one distinct 4-set exists for 4 terms, but 8 tuples are requested.
  try {
    generate_design(numbered_terms(4), 2, 1, opt);
    FAIL() << "expected DesignInfeasible";
  } catch (const DesignInfeasible& e) {
    EXPECT_FALSE(std::string(e.what()).empty());
  }
}

TEST(Design, ZeroFactorIsRejected) { EXPECT_THROW(generate_design(numbered_terms(20), 0, 1), DesignError); }

TEST(Design, SameSeedGivesByteIdenticalFiles) {
  TempDir dir;
  const auto terms = numbered_terms(200);
  write_tuples(generate_design(terms, 2, 99), dir / "a.jsonl");
  write_tuples(generate_design(terms, 2, 99), dir / "b.jsonl");
  write_tuples(generate_design(terms, 2, 100), dir / "c.jsonl");
  const auto a = testing_support::read_file(dir / "a.jsonl");
  EXPECT_EQ(a, testing_support::read_file(dir / "b.jsonl"));
  EXPECT_NE(a, testing_support::read_file(dir / "c.jsonl"));
}

TEST(Design, TupleFileRoundTrips) {
  TempDir dir;
  const auto tuples = generate_design(numbered_terms(50), 2, 5);
  write_tuples(tuples, dir / "t.jsonl");
  EXPECT_EQ(read_tuples(dir / "t.jsonl"), tuples);
}

TEST(Design, ReadRejectsMalformedRecords) {
  TempDir dir;
  testing_support::write_file(dir / "t.jsonl", "{\"tuple_id\":\"a\",\"items\":[\"w\",\"x\",\"y\"]}\n");
  EXPECT_THROW(read_tuples(dir / "t.jsonl"), FormatError);
  testing_support::write_file(dir / "u.jsonl", "not json\n");
  EXPECT_THROW(read_tuples(dir / "u.jsonl"), FormatError);
}

TEST(Validate, DetectsDuplicateSetAndRepeatedItem) {
  const auto terms = numbered_terms(8);
  std::vector<Tuple4> tuples = {
      {"a", {"term0", "term1", "term2", "term3"}},
      {"b", {"term3", "term2", "term1", "term0"}},
      {"c", {"term4", "term4", "term5", "term6"}},
  };
  const auto report = validate_design(tuples, terms, 2);
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.duplicate_tuple_sets, 1u);
  EXPECT_EQ(report.within_tuple_duplicates, 1u);
}

TEST(Validate, DetectsUnknownItemsAndPairOverflow) {
  const auto terms = numbered_terms(6);
  std::vector<Tuple4> tuples = {
      {"a", {"term0", "term1", "term2", "term3"}},
      {"b", {"term0", "term1", "term4", "term5"}},
      {"c", {"term0", "term1", "term2", "zzz"}},
  };
  const auto report = validate_design(tuples, terms, 2);
  EXPECT_EQ(report.unknown_items, 1u);
  EXPECT_EQ(report.max_pair_cooccurrence, 3u);
  EXPECT_GE(report.pairs_over_cap, 1u);
  EXPECT_FALSE(report.ok());
}

TEST(Validate, CleanDesignHasNoViolations) {
  const auto terms = numbered_terms(300);
  const auto tuples = generate_design(terms, 2, 3);
  const auto report = validate_design(tuples, terms, 2);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.min_term_count, 8u);
  EXPECT_EQ(report.max_term_count, 8u);
  EXPECT_EQ(report.n_tuples, 600u);
}

// Property: valid for arbitrary term orderings, sizes, factors and seeds.
TEST(Design, PropertyRandomInputsSatisfyInvariants) {
  std::mt19937_64 gen(2017);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 30 + gen() % 200;
    const std::size_t factor = 1 + gen() % 3;
    auto terms = numbered_terms(n, "w");
    std::shuffle(terms.begin(), terms.end(), gen);
    const auto cap = std::max<std::size_t>(2, pair_cooccurrence_lower_bound(n, factor));
    DesignOptions opt;
    opt.pair_cap = cap;
    const auto tuples = generate_design(make_terms([&] {
                                          std::vector<std::string> s;
                                          for (const auto& t : terms) s.push_back(t.surface);
                                          return s;
                                        }()),
                                        factor, gen(), opt);
    SCOPED_TRACE("n=" + std::to_string(n) + " factor=" + std::to_string(factor));
    expect_valid(tuples, terms, factor, cap);
  }
}
