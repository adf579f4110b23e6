#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gecx/bpe.hpp"
#include "gecx/tokenizer.hpp"
#include "gecx/truecaser.hpp"
#include "gecx/word_classes.hpp"

using namespace gecx;
using Tokens = std::vector<std::string>;

TEST(Tokenize, SplitsPunctuationAndClitics) {
  EXPECT_EQ(tokenize("It's good.").tokens, (Tokens{"It", "'s", "good", "."}));
  EXPECT_EQ(tokenize("I don't know, \"really\"!").tokens,
            (Tokens{"I", "do", "n't", "know", ",", "\"", "really", "\"!"}));
  EXPECT_EQ(tokenize("They'll've").tokens, (Tokens{"They", "'ll", "'ve"}));
  EXPECT_EQ(tokenize("WON'T").tokens, (Tokens{"WO", "N'T"}));
}

TEST(Tokenize, EmptyAndWhitespace) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  \t ").empty());
  EXPECT_EQ(tokenize("a b").tokens, (Tokens{"a", "b"}));
  EXPECT_EQ(tokenize(join(tokenize("a b"))).tokens, (Tokens{"a", "b"}));
}

TEST(Tokenize, IdempotentOnRandomText) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab'.,!?-\" tnsdlvmreTNS";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 30);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string line;
    for (std::size_t k = len(rng); k > 0; --k) line += alphabet[pick(rng)];
    auto once = tokenize(line);
    for (const auto& t : once.tokens) {
      ASSERT_FALSE(t.empty());
      ASSERT_EQ(t.find(' '), std::string::npos);
    }
    ASSERT_EQ(tokenize(join(once)).tokens, once.tokens) << "input: [" << line << "]";
  }
}

TEST(Truecase, Training) {
  auto m = TruecaseModel::train({{"The", "cat"}, {"a", "cat"}});
  EXPECT_EQ(m.best_casing("cat"), "cat");
  m = TruecaseModel::train({{"x", "NASA"}, {"y", "NASA"}});
  EXPECT_EQ(m.best_casing("nasa"), "NASA");
  m = TruecaseModel::train({{"x", "Bob"}, {"y", "bob"}, {"z", "Bob"}});
  EXPECT_EQ(m.best_casing("bob"), "Bob");
  EXPECT_FALSE(m.best_casing("x").has_value());  // position 0 is never counted
}

TEST(Truecase, TieGoesToLexicographicallySmallest) {
  auto m = TruecaseModel::train({{"x", "Apple"}, {"y", "apple"}});
  EXPECT_EQ(m.best_casing("apple"), "Apple");
}

TEST(Truecase, EmptyCorpusThrows) {
  try {
    TruecaseModel::train({});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "no training data");
  }
}

TEST(Truecase, ApplyTouchesOnlyFirstToken) {
  auto m = TruecaseModel::train({{"x", "the", "The"}, {"y", "the"}, {"z", "cat", "Bob"}});
  EXPECT_EQ(m.apply({"The", "cat"}).tokens, (Tokens{"the", "cat"}));
  EXPECT_TRUE(m.apply({}).empty());
  EXPECT_EQ(m.apply({"Zyxq", "runs"}).tokens, (Tokens{"Zyxq", "runs"}));
  EXPECT_EQ(m.apply({"BOB", "THE"}).tokens, (Tokens{"Bob", "THE"}));
}

TEST(Truecase, SaveLoadRoundTrip) {
  auto m = TruecaseModel::train({{"x", "Bob", "bob", "NASA"}, {"y", "Bob"}});
  std::stringstream ss;
  m.save(ss);
  auto back = TruecaseModel::load(ss);
  EXPECT_EQ(back.table(), m.table());
}

Corpus repeat(const std::vector<std::pair<std::string, int>>& counts) {
  Corpus c;
  for (const auto& [w, n] : counts)
    for (int i = 0; i < n; ++i) c.push_back({w});
  return c;
}

TEST(Bpe, FirstMergeIsMostFrequentPair) {
  auto m = BpeModel::learn(repeat({{"low", 4}, {"lower", 1}}), 1);
  ASSERT_EQ(m.merges().size(), 1u);
  EXPECT_EQ(m.merges()[0], (BpeModel::Pair{"l", "o"}));
}

TEST(Bpe, ZeroMergesAndEarlyStop) {
  EXPECT_TRUE(BpeModel::learn(repeat({{"low", 4}}), 0).merges().empty());
  auto m = BpeModel::learn(repeat({{"ab", 3}}), 5);
  EXPECT_EQ(m.merges().size(), 1u);
  EXPECT_EQ(m.fragment_count("ab"), 1u);
  EXPECT_THROW(BpeModel::learn({}, 3), DataError);
}

TEST(Bpe, ApplyMarksContinuation) {
  BpeModel empty;
  EXPECT_EQ(empty.apply({"xyz"}).tokens, (Tokens{"x@@", "y@@", "z"}));
  auto m = BpeModel::learn(repeat({{"token", 5}}), 10);
  EXPECT_EQ(m.apply({"token"}).tokens, (Tokens{"token"}));
  EXPECT_EQ(m.fragment_count("token"), 1u);
  EXPECT_EQ(m.fragment_count("q"), 1u);
}

TEST(Bpe, MisspellingIsSegmented) {
  Corpus text;
  for (int i = 0; i < 5; ++i) text.push_back({"the", "difficulty", "is", "real"});
  auto m = BpeModel::learn(text, 200);
  EXPECT_EQ(m.fragment_count("difficulty"), 1u);
  EXPECT_GT(m.fragment_count("dificullty"), 1u);
}

TEST(Bpe, DuplicateMergeRejected) {
  EXPECT_THROW(BpeModel({{"a", "b"}, {"a", "b"}}), DataError);
}

TEST(Bpe, PrefixPropertyAndRoundTrip) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abcde";
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1), len(1, 7), sent(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    Corpus corpus;
    for (int s = 0; s < 30; ++s) {
      TokenSentence t;
      for (std::size_t k = sent(rng); k > 0; --k) {
        std::string w;
        for (std::size_t l = len(rng); l > 0; --l) w += alphabet[ch(rng)];
        t.tokens.push_back(w);
      }
      corpus.push_back(t);
    }
    std::size_t n = 5 + static_cast<std::size_t>(trial), k = 7;
    auto small = BpeModel::learn(corpus, n);
    auto big = BpeModel::learn(corpus, n + k);
    ASSERT_LE(small.merges().size(), big.merges().size());
    for (std::size_t i = 0; i < small.merges().size(); ++i) ASSERT_EQ(small.merges()[i], big.merges()[i]);

    for (const auto& s : corpus) {
      auto seg = big.apply(s);
      ASSERT_EQ(BpeModel::unapply(seg), s);
      for (const auto& t : s.tokens) ASSERT_EQ(big.fragment_count(t), big.apply({t}).size());
    }
  }
}

TEST(Bpe, SaveLoadRoundTrip) {
  auto m = BpeModel::learn(repeat({{"lower", 3}, {"newest", 4}, {"widest", 2}}), 20);
  std::stringstream ss;
  m.save(ss);
  EXPECT_EQ(BpeModel::load(ss).merges(), m.merges());
}

TEST(WordClasses, LoadAndLookup) {
  std::istringstream in("dog\t12\ncat\t12\n");
  auto m = WordClassMap::load(in);
  EXPECT_EQ(m.class_of("dog"), "12");
  EXPECT_EQ(m.class_of("cat"), "12");
  EXPECT_EQ(m.class_of("emu"), "UNK-CLASS");
  std::istringstream dup("dog\t1\ndog\t2\n");
  EXPECT_EQ(WordClassMap::load(dup).class_of("dog"), "2");
}

TEST(WordClasses, MalformedLineNamesLineNumber) {
  std::istringstream in("dog\t1\ncat\n");
  try {
    WordClassMap::load(in);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(WordClasses, Projection) {
  WordClassMap m;
  m.set("dog", "C1");
  EXPECT_EQ(project_to_classes(TokenSentence{"a", "b"}, m).tokens, (Tokens{"UNK-CLASS", "UNK-CLASS"}));
  EXPECT_EQ(project_to_classes(TokenSentence{"dog", "b"}, m).tokens, (Tokens{"C1", "UNK-CLASS"}));
}
