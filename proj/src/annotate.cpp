#include "gecx/annotate.hpp"

#include "gecx/parallel.hpp"

namespace gecx {

FeatureVector DenseEditFeatures::compute(const TokenSentence& source, const TokenSentence& hypothesis) const {
  return dense_edit_features(source, hypothesis);
}

FeatureVector SparsePatternFeatures::compute(const TokenSentence& source, const TokenSentence& hypothesis) const {
  return sparse_pattern_features(source, hypothesis, *classes_);
}

FeatureVector LmFeature::compute(const TokenSentence&, const TokenSentence& hypothesis) const {
  auto sc = classes_ ? model_->score(project_to_classes(hypothesis, *classes_)) : model_->score(hypothesis);
  FeatureVector f;
  f.add_dense(name_, -(normalized_ ? sc.normalized : sc.logprob));
  return f;
}

void add_features(Hypothesis& h, const FeatureVector& f) {
  for (const auto& [name, v] : f.dense) h.add_feature(name, v);
  for (const auto& [pattern, count] : f.sparse) h.add_feature(pattern, static_cast<double>(count));
}

void annotate_features(std::vector<NBestList>& nbests, const Corpus& sources,
                       const std::vector<std::shared_ptr<const FeatureFunction>>& functions, std::size_t jobs) {
  for (const auto& list : nbests) {
    if (list.sentence_id >= sources.size()) {
      throw DataError("n-best sentence id " + std::to_string(list.sentence_id) + " has no source sentence");
    }
  }
  parallel_for(nbests.size(), jobs, [&](std::size_t i) {
    auto& list = nbests[i];
    const auto& src = sources[list.sentence_id];
    for (auto& h : list.hypotheses)
      for (const auto& fn : functions) add_features(h, fn->compute(src, h.tokens));
  });
}

}  // namespace gecx
