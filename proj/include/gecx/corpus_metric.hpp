#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "gecx/gleu.hpp"
#include "gecx/m2.hpp"
#include "gecx/sentence.hpp"

namespace gecx {

using MetricStats = std::vector<double>;

// A corpus metric expressed through per-sentence sufficient statistics that
// add up over the corpus. Tuners evaluate every hypothesis once and then
// work on the summed statistics only.
class CorpusMetric {
 public:
  virtual ~CorpusMetric() = default;
  virtual std::string name() const = 0;
  virtual std::size_t num_stats() const = 0;
  virtual MetricStats sentence_stats(std::size_t sentence_id, const TokenSentence& hypothesis) const = 0;
  virtual double score(const MetricStats& totals) const = 0;
  virtual bool decomposable() const { return true; }
};

// [tp, fp, fn]; per sentence the annotator and edit set maximizing the
// sentence-level F are chosen independently of the rest of the corpus.
class M2Metric final : public CorpusMetric {
 public:
  M2Metric(std::vector<GoldAnnotation> gold, M2Options opts = {}) : gold_(std::move(gold)), opts_(opts) {}
  std::string name() const override { return "m2"; }
  std::size_t num_stats() const override { return 3; }
  MetricStats sentence_stats(std::size_t sentence_id, const TokenSentence& hypothesis) const override;
  double score(const MetricStats& totals) const override;

 private:
  std::vector<GoldAnnotation> gold_;
  M2Options opts_;
};

// GLEU statistics averaged over each sentence's references.
class GleuMetric final : public CorpusMetric {
 public:
  GleuMetric(Corpus sources, std::vector<std::vector<TokenSentence>> references, int max_n = 4)
      : sources_(std::move(sources)), references_(std::move(references)), max_n_(max_n) {}
  std::string name() const override { return "gleu"; }
  std::size_t num_stats() const override { return 2 + 2 * static_cast<std::size_t>(max_n_); }
  MetricStats sentence_stats(std::size_t sentence_id, const TokenSentence& hypothesis) const override;
  double score(const MetricStats& totals) const override;

 private:
  Corpus sources_;
  std::vector<std::vector<TokenSentence>> references_;
  int max_n_;
};

}  // namespace gecx
