#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gecx/sentence.hpp"

namespace gecx {

struct SentenceScore {
  double logprob = 0.0;      // natural log
  std::size_t n_scored = 0;  // tokens + 1 for </s>
  double normalized = 0.0;   // logprob / n_scored
};

// Word or class n-gram language model.
//
// Training builds an interpolated Kneser-Ney model with a single discount at
// every order. The result is stored in backoff form (per n-gram probability,
// per context backoff weight), which represents interpolated KN exactly and
// is also what ARPA files carry, so trained and loaded models share one query
// path.
class NGramModel {
 public:
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";
  static constexpr const char* kUnk = "<unk>";

  // Sentences are padded with order-1 <s> and one </s>. <unk> receives one
  // reserved unigram count. Throws DataError on an empty corpus and
  // std::invalid_argument on a bad order or discount.
  static NGramModel train(const Corpus& corpus, int order, double discount = 0.75);

  static NGramModel load_arpa(std::istream& in);
  static NGramModel load_arpa_file(const std::string& path);
  // log10 probabilities and backoffs; n-grams sorted per order.
  void save_arpa(std::ostream& out) const;

  int order() const { return order_; }

  // Natural-log P(word | context); context is the preceding words, most
  // recent last, truncated to order-1. Unknown words map to <unk>.
  double log_prob(std::span<const std::string> context, const std::string& word) const;
  double prob(std::span<const std::string> context, const std::string& word) const;

  SentenceScore score(const TokenSentence& s) const;
  // exp(-total logprob / total scored positions). Throws DataError when empty.
  double perplexity(const Corpus& corpus) const;

  // Every word the model can predict (</s> and <unk> included, <s> excluded).
  std::vector<std::string> vocabulary() const;
  bool contains(const std::string& word) const;

  // Number of n-grams carrying a probability at the given order (1-based).
  std::size_t ngram_count(int n) const;

 private:
  using Id = std::uint32_t;
  struct Entry {
    double log_prob = 0.0;
    double log_backoff = 0.0;
    bool has_prob = false;
    bool has_backoff = false;
  };
  using Table = std::unordered_map<std::string, Entry>;

  Id intern(const std::string& word);
  Id lookup(const std::string& word) const;
  static std::string key(std::span<const Id> ids);
  double log_prob_ids(std::span<const Id> context, Id word) const;

  int order_ = 1;
  std::vector<std::string> words_;
  std::unordered_map<std::string, Id> ids_;
  std::vector<Table> tables_;  // tables_[k - 1] holds k-grams
};

}  // namespace gecx
