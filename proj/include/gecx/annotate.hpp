#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gecx/edit_features.hpp"
#include "gecx/nbest.hpp"
#include "gecx/ngram_model.hpp"
#include "gecx/word_classes.hpp"

namespace gecx {

// Scores one hypothesis against its source sentence.
class FeatureFunction {
 public:
  virtual ~FeatureFunction() = default;
  virtual FeatureVector compute(const TokenSentence& source, const TokenSentence& hypothesis) const = 0;
};

class DenseEditFeatures final : public FeatureFunction {
 public:
  FeatureVector compute(const TokenSentence& source, const TokenSentence& hypothesis) const override;
};

class SparsePatternFeatures final : public FeatureFunction {
 public:
  explicit SparsePatternFeatures(std::shared_ptr<const WordClassMap> classes) : classes_(std::move(classes)) {}
  FeatureVector compute(const TokenSentence& source, const TokenSentence& hypothesis) const override;

 private:
  std::shared_ptr<const WordClassMap> classes_;
};

// Negative natural-log LM probability of the hypothesis, optionally divided
// by the number of scored positions. With a class map the hypothesis is
// projected to classes first (word-class LM).
class LmFeature final : public FeatureFunction {
 public:
  LmFeature(std::string name, std::shared_ptr<const NGramModel> model, bool normalized = false,
            std::shared_ptr<const WordClassMap> classes = nullptr)
      : name_(std::move(name)), model_(std::move(model)), normalized_(normalized), classes_(std::move(classes)) {}
  FeatureVector compute(const TokenSentence& source, const TokenSentence& hypothesis) const override;

 private:
  std::string name_;
  std::shared_ptr<const NGramModel> model_;
  bool normalized_;
  std::shared_ptr<const WordClassMap> classes_;
};

// Adds every feature function's output to each hypothesis. sources is
// indexed by sentence id. Throws DataError on unresolved ids or feature-name
// collisions.
void annotate_features(std::vector<NBestList>& nbests, const Corpus& sources,
                       const std::vector<std::shared_ptr<const FeatureFunction>>& functions, std::size_t jobs = 1);

// Dense values in order, then sparse patterns in canonical order.
void add_features(Hypothesis& h, const FeatureVector& f);

}  // namespace gecx
