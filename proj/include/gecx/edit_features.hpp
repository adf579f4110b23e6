#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gecx/sentence.hpp"
#include "gecx/word_classes.hpp"

namespace gecx {

// Named dense values (insertion-ordered, unique names) plus sparse pattern counts.
struct FeatureVector {
  std::vector<std::pair<std::string, double>> dense;
  std::map<std::string, long> sparse;

  // Throws std::invalid_argument on duplicate names or non-finite values.
  void add_dense(const std::string& name, double value);
  void add_sparse(const std::string& pattern, long count = 1);

  // 0 when absent.
  double dense_value(const std::string& name) const;
  bool empty() const { return dense.empty() && sparse.empty(); }
};

// Canonical dense edit feature names, in emission order.
inline const std::vector<std::string>& dense_edit_feature_names() {
  static const std::vector<std::string> names = {"word_lev_dist", "n_sub",   "n_ins",   "n_del",  "n_match",
                                                  "char_dist",     "char_sub", "char_ins", "char_del"};
  return names;
}

// Word-level op counts from align_words, plus character-level op counts
// summed over the word pairs aligned as substitutions.
FeatureVector dense_edit_features(const TokenSentence& src, const TokenSentence& hyp);

// One pattern per non-match region of the word alignment:
//   "<op>(<src tokens>→<hyp tokens>)|L=<class of left word>|R=<class of right word>"
// op is sub, ins or del; multi-token sides join with '_'; context words are
// source tokens, with <s> and </s> at the sentence boundaries.
FeatureVector sparse_pattern_features(const TokenSentence& src, const TokenSentence& hyp, const WordClassMap& classes);

}  // namespace gecx
