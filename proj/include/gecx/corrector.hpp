#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gecx/nbest.hpp"
#include "gecx/sentence.hpp"

namespace gecx {

// Anything that turns a sentence into an n-best list of corrections.
// Implementations must be deterministic and return at least one hypothesis.
class Corrector {
 public:
  virtual ~Corrector() = default;
  virtual NBestList correct(std::size_t sentence_id, const TokenSentence& input) const = 0;
};

// Replays n-best lists produced elsewhere, keyed by sentence id.
// The input sentence is ignored.
class FileCorrector final : public Corrector {
 public:
  explicit FileCorrector(std::vector<NBestList> lists);
  static FileCorrector from_file(const std::string& path);

  // Throws DataError naming the id when no list was stored for it.
  NBestList correct(std::size_t sentence_id, const TokenSentence& input) const override;
  std::size_t size() const { return lists_.size(); }

 private:
  std::map<std::size_t, NBestList> lists_;
};

struct RewriteRule {
  std::vector<std::string> pattern;
  std::vector<std::string> replacement;
};

// Token-sequence rewriting. Scans left to right; at each position the
// longest matching pattern wins (equal lengths: earliest rule), the match is
// replaced and scanning resumes after it.
class RuleCorrector final : public Corrector {
 public:
  // Throws std::invalid_argument on an empty pattern.
  explicit RuleCorrector(std::vector<RewriteRule> rules);
  // "pattern tokens ||| replacement tokens" per line; '#' starts a comment.
  static RuleCorrector load(std::istream& in);
  static RuleCorrector load_file(const std::string& path);

  TokenSentence rewrite(const TokenSentence& input) const;
  NBestList correct(std::size_t sentence_id, const TokenSentence& input) const override;
  const std::vector<RewriteRule>& rules() const { return rules_; }

 private:
  std::vector<RewriteRule> rules_;
};

// Echoes the input.
class IdentityCorrector final : public Corrector {
 public:
  NBestList correct(std::size_t sentence_id, const TokenSentence& input) const override;
};

// Adds feature "ens" = sum of weight * column value to every hypothesis.
// columns[c][list][hyp] are scores already in negative-log space. Throws
// DataError when a column misses a hypothesis, std::invalid_argument when
// the weight count differs from the column count.
void combine_ensemble_scores(std::vector<NBestList>& nbests,
                             const std::vector<std::vector<std::vector<double>>>& columns,
                             const std::vector<double>& weights);

// Same, with the columns named after features already present in the lists.
void combine_ensemble_features(std::vector<NBestList>& nbests, const std::vector<std::string>& feature_names,
                               const std::vector<double>& weights);

}  // namespace gecx
