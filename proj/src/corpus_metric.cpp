#include "gecx/corpus_metric.hpp"

#include <stdexcept>

namespace gecx {

MetricStats M2Metric::sentence_stats(std::size_t sentence_id, const TokenSentence& hypothesis) const {
  if (sentence_id >= gold_.size()) throw DataError("no gold annotation for sentence " + std::to_string(sentence_id));
  auto s = m2_sentence(gold_[sentence_id], hypothesis, EditCounts{}, opts_);
  return {static_cast<double>(s.counts.tp), static_cast<double>(s.counts.fp), static_cast<double>(s.counts.fn)};
}

double M2Metric::score(const MetricStats& t) const {
  return prf(EditCounts{static_cast<long>(t[0]), static_cast<long>(t[1]), static_cast<long>(t[2])}, opts_.beta).f;
}

MetricStats GleuMetric::sentence_stats(std::size_t sentence_id, const TokenSentence& hypothesis) const {
  if (sentence_id >= sources_.size() || sentence_id >= references_.size() || references_[sentence_id].empty()) {
    throw DataError("no GLEU reference for sentence " + std::to_string(sentence_id));
  }
  MetricStats total(num_stats(), 0.0);
  const auto& refs = references_[sentence_id];
  for (const auto& ref : refs) {
    auto st = gleu_sentence_stats(sources_[sentence_id], ref, hypothesis, max_n_);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += st[k];
  }
  for (auto& v : total) v /= static_cast<double>(refs.size());
  return total;
}

double GleuMetric::score(const MetricStats& totals) const { return gleu_from_stats(totals, max_n_); }

}  // namespace gecx
