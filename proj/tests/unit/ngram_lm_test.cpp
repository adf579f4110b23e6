#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gecx/ngram_model.hpp"
#include "gecx/word_classes.hpp"

using namespace gecx;

namespace {

Corpus random_corpus(std::mt19937_64& rng, std::size_t sentences, std::size_t vocab, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), word(0, vocab - 1);
  Corpus c;
  for (std::size_t s = 0; s < sentences; ++s) {
    TokenSentence t;
    for (std::size_t k = len(rng); k > 0; --k) {
      // skewed: squaring a uniform index favours low ids
      std::size_t a = word(rng), b = word(rng);
      t.tokens.push_back("w" + std::to_string(std::min(a, b)));
    }
    c.push_back(t);
  }
  return c;
}

double mass(const NGramModel& m, const std::vector<std::string>& ctx) {
  double sum = 0.0;
  for (const auto& w : m.vocabulary()) sum += m.prob(ctx, w);
  return sum;
}

}  // namespace

TEST(NGram, UnigramReservesUnknownCount) {
  auto m = NGramModel::train({{"a", "a", "b"}}, 1);
  // counts a:2 b:1 </s>:1 plus one reserved for <unk>
  EXPECT_NEAR(m.prob({}, "a"), 2.0 / 5.0, 1e-12);
  EXPECT_NEAR(m.prob({}, "b"), 1.0 / 5.0, 1e-12);
  EXPECT_NEAR(m.prob({}, "zzz"), 1.0 / 5.0, 1e-12);
  EXPECT_NEAR(mass(m, {}), 1.0, 1e-12);
}

TEST(NGram, EmptySentenceScoresEndOnly) {
  auto m = NGramModel::train({{"a"}, {}}, 1);
  auto s = m.score({});
  EXPECT_EQ(s.n_scored, 1u);
  EXPECT_NEAR(s.logprob, std::log(0.5), 1e-12);
  EXPECT_NEAR(s.normalized, s.logprob, 1e-12);
}

TEST(NGram, NormalizesOverVocabulary) {
  std::mt19937_64 rng(1);
  auto corpus = random_corpus(rng, 300, 40, 12);
  for (int order : {1, 2, 3, 4}) {
    auto m = NGramModel::train(corpus, order);
    auto vocab = m.vocabulary();
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::string> ctx;
      for (int k = 0; k < order - 1; ++k) {
        int r = static_cast<int>(pick(rng) % 5);
        ctx.push_back(r == 0 ? "<s>" : r == 1 ? "never-seen" : vocab[pick(rng)]);
      }
      ASSERT_NEAR(mass(m, ctx), 1.0, 1e-9) << "order " << order;
    }
  }
}

TEST(NGram, RepeatedSentenceBeatsPermutations) {
  TokenSentence s{"the", "cat", "sat", "on", "the", "mat"};
  auto m = NGramModel::train(Corpus(20, s), 3);
  double base = m.perplexity({s});
  auto perm = s.tokens;
  std::sort(perm.begin(), perm.end());
  int checked = 0;
  do {
    if (perm == s.tokens) continue;
    ASSERT_LT(base, m.perplexity({TokenSentence(perm)}));
    ++checked;
  } while (std::next_permutation(perm.begin(), perm.end()) && checked < 200);
}

TEST(NGram, UnigramFactorizes) {
  std::mt19937_64 rng(2);
  auto m = NGramModel::train(random_corpus(rng, 200, 20, 10), 1);
  TokenSentence a{"w1", "w2", "w3"}, b{"w4", "w0"}, ab{"w1", "w2", "w3", "w4", "w0"};
  double eos = m.log_prob({}, "</s>");
  EXPECT_NEAR(m.score(ab).logprob, m.score(a).logprob + m.score(b).logprob - eos, 1e-9);
  TokenSentence ba{"w0", "w4", "w3", "w2", "w1"};
  EXPECT_NEAR(m.score(ab).logprob, m.score(ba).logprob, 1e-9);
  auto bigram = NGramModel::train({{"w1", "w2", "w3", "w4", "w0"}, {"w1", "w2"}}, 2);
  EXPECT_NE(bigram.score(ab).logprob, bigram.score(ba).logprob);
}

TEST(NGram, NormalizedIsMeanLogprob) {
  std::mt19937_64 rng(4);
  auto corpus = random_corpus(rng, 100, 15, 8);
  auto m = NGramModel::train(corpus, 3);
  for (const auto& s : random_corpus(rng, 50, 20, 9)) {
    auto sc = m.score(s);
    ASSERT_EQ(sc.n_scored, s.size() + 1);
    ASSERT_LE(sc.logprob, 0.0);
    ASSERT_NEAR(sc.normalized, sc.logprob / static_cast<double>(sc.n_scored), 1e-12);
  }
}

TEST(NGram, UniformUnigramPerplexityNearVocabularySize) {
  std::mt19937_64 rng(5);
  const std::size_t V = 25;
  std::uniform_int_distribution<std::size_t> word(0, V - 1);
  auto make = [&](std::size_t n) {
    Corpus c;
    for (std::size_t s = 0; s < n; ++s) {
      TokenSentence t;
      for (int k = 0; k < 200; ++k) t.tokens.push_back("u" + std::to_string(word(rng)));
      c.push_back(t);
    }
    return c;
  };
  auto m = NGramModel::train(make(200), 1);
  double ppl = m.perplexity(make(20));
  EXPECT_NEAR(ppl, static_cast<double>(V), 0.05 * V);
  EXPECT_GE(ppl, 1.0);
}

TEST(NGram, TrainingPerplexityBelowHeldOut) {
  std::mt19937_64 rng(6);
  auto corpus = random_corpus(rng, 400, 30, 10);
  double gap = 0.0;
  for (int split = 0; split < 5; ++split) {
    std::shuffle(corpus.begin(), corpus.end(), rng);
    Corpus train(corpus.begin(), corpus.begin() + 300), held(corpus.begin() + 300, corpus.end());
    auto m = NGramModel::train(train, 3);
    gap += m.perplexity(held) - m.perplexity(train);
  }
  EXPECT_GT(gap, 0.0);
}

TEST(NGram, MoreCopiesNeverLowerProbability) {
  std::mt19937_64 rng(7);
  auto base = random_corpus(rng, 50, 12, 8);
  TokenSentence target{"w1", "w3", "w2", "w5"};
  double prev = -1e300;
  for (int copies = 0; copies < 6; ++copies) {
    Corpus c = base;
    for (int k = 0; k < copies; ++k) c.push_back(target);
    double lp = NGramModel::train(c, 3).score(target).logprob;
    ASSERT_GE(lp, prev - 1e-12);
    prev = lp;
  }
}

TEST(NGram, ArpaRoundTrip) {
  std::mt19937_64 rng(8);
  auto corpus = random_corpus(rng, 120, 15, 9);
  auto m = NGramModel::train(corpus, 3);
  std::stringstream ss;
  m.save_arpa(ss);
  auto back = NGramModel::load_arpa(ss);
  EXPECT_EQ(back.order(), 3);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(back.ngram_count(n), m.ngram_count(n));
  for (const auto& s : random_corpus(rng, 40, 18, 9)) ASSERT_NEAR(back.score(s).logprob, m.score(s).logprob, 1e-6);
  std::stringstream again;
  back.save_arpa(again);
  std::stringstream first;
  m.save_arpa(first);
  EXPECT_EQ(again.str(), first.str());
}

TEST(NGram, ArpaHeader) {
  auto m = NGramModel::train({{"a", "b"}}, 2);
  std::stringstream ss;
  m.save_arpa(ss);
  auto text = ss.str();
  EXPECT_EQ(text.rfind("\n\\data\\\n", 0), 0u);  // conventional leading blank line
  EXPECT_NE(text.find("ngram 1="), std::string::npos);
  EXPECT_NE(text.find("\\2-grams:"), std::string::npos);
  EXPECT_NE(text.find("\\end\\"), std::string::npos);
}

TEST(NGram, Errors) {
  EXPECT_THROW(NGramModel::train({}, 3), DataError);
  EXPECT_THROW(NGramModel::train({{"a"}}, 0), std::invalid_argument);
  EXPECT_THROW(NGramModel::train({{"a"}}, 2, 1.0), std::invalid_argument);
  EXPECT_THROW(NGramModel::train({{"a"}}, 2, 0.0), std::invalid_argument);
  auto m = NGramModel::train({{"a"}}, 2);
  EXPECT_THROW(m.perplexity({}), DataError);
  std::istringstream junk("not an arpa file\n");
  EXPECT_THROW(NGramModel::load_arpa(junk), DataError);
}

TEST(NGram, ClassModelVocabularyIsClassInventory) {
  WordClassMap classes;
  classes.set("dog", "ANIMAL");
  classes.set("cat", "ANIMAL");
  classes.set("runs", "VERB");
  Corpus words = {{"dog", "runs"}, {"cat", "runs", "fast"}};
  auto m = NGramModel::train(project_to_classes(words, classes), 3);
  auto vocab = m.vocabulary();
  std::set<std::string> got(vocab.begin(), vocab.end());
  got.erase("</s>");
  got.erase("<unk>");
  EXPECT_EQ(got, classes.inventory());
}
