#include <gtest/gtest.h>

#include <random>

#include "bwslex/error.hpp"
#include "bwslex/lexicon.hpp"
#include "test_support.hpp"

using namespace bwslex;
using testing_support::TempDir;
using testing_support::write_file;

namespace {

ModifierInventory reference_inventory() {
  return ModifierInventory(load_modifier_inventory(testing_support::data_file("modifiers.tsv")));
}

}  // namespace

TEST(LoadTerms, PreservesOrderAndAssignsSequentialIds) {
  TempDir dir;
  write_file(dir / "terms.txt", "favor\nsevere\n");
  const auto terms = load_terms(dir / "terms.txt");
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].surface, "favor");
  EXPECT_EQ(terms[1].surface, "severe");
  EXPECT_EQ(terms[0].id.value, 0u);
  EXPECT_EQ(terms[1].id.value, 1u);
}

TEST(LoadTerms, DuplicateSurfaceNamesTheLine) {
  TempDir dir;
  write_file(dir / "terms.txt", "favor\nfavor\n");
  try {
    load_terms(dir / "terms.txt");
    FAIL() << "expected DesignError";
  } catch (const DesignError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(LoadTerms, EmptyFileGivesEmptyList) {
  TempDir dir;
  write_file(dir / "terms.txt", "");
  EXPECT_TRUE(load_terms(dir / "terms.txt").empty());
}

TEST(LoadTerms, NormalizesCaseAndSpacingAndSkipsBlankLines) {
  TempDir dir;
  write_file(dir / "terms.txt", "  Would  be Very   Easy \r\n\n\nDID NOT harm\n");
  const auto terms = load_terms(dir / "terms.txt");
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].surface, "would be very easy");
  EXPECT_EQ(terms[1].surface, "did not harm");
}

TEST(LoadTerms, MissingFileIsIoError) { EXPECT_THROW(load_terms("/nonexistent/terms.txt"), IoError); }

TEST(ModifierInventory, ParsesRows) {
  TempDir dir;
  write_file(dir / "mods.tsv", "never\tnegator\ncould be\tmodal\nvery\tdegree_adverb\n");
  const auto entries = load_modifier_inventory(dir / "mods.tsv");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].surface, "never");
  EXPECT_EQ(entries[0].category, ModifierCategory::negator);
  EXPECT_EQ(entries[1].surface, "could be");
  EXPECT_EQ(entries[1].category, ModifierCategory::modal);
}

TEST(ModifierInventory, UnknownCategoryIsRejected) {
  TempDir dir;
  write_file(dir / "mods.tsv", "very\tintensifier\n");
  EXPECT_THROW(load_modifier_inventory(dir / "mods.tsv"), FormatError);
}

TEST(ModifierInventory, MalformedAndDuplicateRowsAreRejected) {
  TempDir dir;
  write_file(dir / "a.tsv", "never negator\n");
  EXPECT_THROW(load_modifier_inventory(dir / "a.tsv"), FormatError);
  write_file(dir / "b.tsv", "never\tnegator\nnever\tmodal\n");
  EXPECT_THROW(load_modifier_inventory(dir / "b.tsv"), FormatError);
}

TEST(ModifierInventory, BundledInventoryLoads) {
  const auto inv = reference_inventory();
  EXPECT_GE(inv.entries().size(), 40u);
  ASSERT_NE(inv.find("will not be"), nullptr);
  EXPECT_EQ(inv.find("will not be")->category, ModifierCategory::negator);
  ASSERT_NE(inv.find("would have been"), nullptr);
  EXPECT_EQ(inv.find("would have been")->category, ModifierCategory::modal);
  ASSERT_NE(inv.find("less"), nullptr);
  EXPECT_EQ(inv.find("less")->category, ModifierCategory::degree_adverb);
}

TEST(Decompose, SingleModifier) {
  const auto d = decompose("did not harm", reference_inventory());
  ASSERT_TRUE(d);
  ASSERT_EQ(d->modifier_chain.size(), 1u);
  EXPECT_EQ(d->modifier_chain[0].surface, "did not");
  EXPECT_EQ(d->content_word, "harm");
}

TEST(Decompose, ChainOfModifiers) {
  const auto d = decompose("would be very easy", reference_inventory());
  ASSERT_TRUE(d);
  ASSERT_EQ(d->modifier_chain.size(), 2u);
  EXPECT_EQ(d->modifier_chain[0].surface, "would be");
  EXPECT_EQ(d->modifier_chain[1].surface, "very");
  EXPECT_EQ(d->content_word, "easy");
  EXPECT_EQ(d->modifier_key(), "would be very");
  EXPECT_EQ(d->category(), ModifierCategory::modal);
}

TEST(Decompose, SingleWordIsNotDecomposable) { EXPECT_FALSE(decompose("favor", reference_inventory())); }

TEST(Decompose, LongestMatchWins) {
  const auto d = decompose("would not be happy", reference_inventory());
  ASSERT_TRUE(d);
  ASSERT_EQ(d->modifier_chain.size(), 1u);
  EXPECT_EQ(d->modifier_chain[0].surface, "would not be");
}

TEST(Decompose, NegatorOutranksAdverbInChainCategory) {
  const auto d = decompose("not very good", reference_inventory());
  ASSERT_TRUE(d);
  EXPECT_EQ(d->modifier_key(), "not very");
  EXPECT_EQ(d->category(), ModifierCategory::negator);
}

TEST(Decompose, UncoveredPrefixGivesNone) {
  EXPECT_FALSE(decompose("quite good", reference_inventory()));
  EXPECT_FALSE(decompose("very quite good", reference_inventory()));
}

// Any phrase built from inventory entries plus one content word decomposes,
// and the pieces rejoin to the phrase.
TEST(Decompose, PropertyConstructedPhrasesRoundTrip) {
  const auto inv = reference_inventory();
  const std::vector<std::string> words = {"good", "bad", "happy", "harm", "easy", "severe"};
  std::mt19937_64 gen(20170801);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t length = 1 + gen() % 3;
    std::string phrase;
    for (std::size_t i = 0; i < length; ++i) {
      phrase += inv.entries()[gen() % inv.entries().size()].surface + " ";
    }
    phrase += words[gen() % words.size()];
    const auto d = decompose(phrase, inv);
    ASSERT_TRUE(d) << phrase;
    EXPECT_EQ(d->modifier_key() + " " + d->content_word, phrase);
    EXPECT_EQ(split_tokens(d->content_word).size(), 1u);
  }
}

TEST(Lexicon, SaveWritesThreeDecimals) {
  TempDir dir;
  ScoredLexicon lex;
  lex.set("favor", 0.653);
  lex.set("severe", -0.833);
  save_lexicon(lex, dir / "lex.tsv");
  EXPECT_EQ(testing_support::read_file(dir / "lex.tsv"), "favor\t0.653\nsevere\t-0.833\n");
}

TEST(Lexicon, NegativeZeroIsWrittenAsZero) { EXPECT_EQ(format_score(-0.0001), "0.000"); }

TEST(Lexicon, OutOfRangeScoreOnLoadNamesTheLine) {
  TempDir dir;
  write_file(dir / "lex.tsv", "ok\t0.5\nx\t1.5\n");
  try {
    load_lexicon(dir / "lex.tsv");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Lexicon, SetRejectsOutOfRange) {
  ScoredLexicon lex;
  EXPECT_THROW(lex.set("x", 1.0001), DataError);
  EXPECT_THROW(lex.set("x", std::nan("")), DataError);
  EXPECT_NO_THROW(lex.set("x", -1.0));
}

TEST(Lexicon, PropertyLoadOfSaveRoundsToThreeDecimals) {
  TempDir dir;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ScoredLexicon lex, rounded;
    for (int i = 0; i < 50; ++i) {
      const double s = u(gen);
      lex.set("term" + std::to_string(i), s);
      rounded.set("term" + std::to_string(i), std::stod(format_score(s)));
    }
    save_lexicon(lex, dir / "lex.tsv");
    EXPECT_EQ(load_lexicon(dir / "lex.tsv"), rounded);
  }
}
