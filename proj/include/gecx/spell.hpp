#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gecx/bpe.hpp"
#include "gecx/ngram_model.hpp"
#include "gecx/sentence.hpp"

namespace gecx {

// Known-good word forms with frequencies (all >= 1).
class Lexicon {
 public:
  Lexicon() = default;
  // Throws DataError when empty or a frequency is < 1.
  explicit Lexicon(std::map<std::string, long> freq);

  // "word<TAB or SPACE>freq" per line; a bare word counts once.
  static Lexicon load(std::istream& in);
  static Lexicon load_file(const std::string& path);
  // Token frequencies of a corpus.
  static Lexicon from_corpus(const Corpus& corpus);
  void save(std::ostream& out) const;

  bool contains(const std::string& w) const { return freq_.count(w) != 0; }
  long frequency(const std::string& w) const;
  const std::map<std::string, long>& entries() const { return freq_; }
  std::size_t size() const { return freq_.size(); }

 private:
  std::map<std::string, long> freq_;
};

// Each lexicon word as a sentence of its code points, for training the
// character LM.
Corpus lexicon_char_corpus(const Lexicon& lex);

struct SpellOptions {
  double lambda_char = 1.0;
  double lambda_lm = 1.0;
  double tau = 1.0;  // natural-log margin a candidate must beat keeping by
  std::size_t max_distance = 2;
  std::size_t max_candidates = 50;
};

struct SpellChange {
  std::size_t position;
  std::string from;
  std::string to;
  double margin;  // candidate score minus keep score
};

// Noisy-channel spell-checker for words the BPE model would split. Only
// tokens with more than one BPE fragment that are not in the lexicon are
// considered. For such a token t in sentence s, each lexicon word w within
// Damerau-Levenshtein distance max_distance is scored as
//   lambda_char * (-dist(t, w) + charLM(w)) + lambda_lm * LM(s[t := w]) + ln freq(w)
// and keeping t as
//   lambda_char * charLM(t) + lambda_lm * LM(s),
// where charLM is the length-normalized character log-probability and LM the
// word log-probability of the sentence. The best candidate replaces t when
// it wins by more than tau. Tokens are processed left to right, so context
// includes earlier replacements.
class SpellChecker {
 public:
  SpellChecker(std::shared_ptr<const Lexicon> lexicon, std::shared_ptr<const BpeModel> bpe,
               std::shared_ptr<const NGramModel> char_lm, std::shared_ptr<const NGramModel> word_lm,
               SpellOptions opts = {});

  bool triggers(const std::string& token) const;
  // Lexicon words within max_distance, frequency descending then word order,
  // capped at max_candidates.
  std::vector<std::string> candidates(const std::string& token) const;

  TokenSentence correct(const TokenSentence& s, std::vector<SpellChange>* changes = nullptr) const;
  Corpus correct_corpus(const Corpus& corpus, std::size_t jobs = 1) const;

  const SpellOptions& options() const { return opts_; }

 private:
  double char_score(const std::string& word) const;
  double word_score(const TokenSentence& s) const;

  std::shared_ptr<const Lexicon> lexicon_;
  std::shared_ptr<const BpeModel> bpe_;
  std::shared_ptr<const NGramModel> char_lm_;
  std::shared_ptr<const NGramModel> word_lm_;
  SpellOptions opts_;
  // (code point count, word) for length pruning
  std::vector<std::pair<std::size_t, std::string>> by_length_;
};

}  // namespace gecx
