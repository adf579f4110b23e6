#include "gecx/human.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gecx {

MeanSd human_leave_one_out(std::span<const double> scores) {
  if (scores.size() < 2) throw std::invalid_argument("leave-one-out needs at least two annotators");
  MeanSd out;
  for (double s : scores) out.mean += s;
  out.mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - out.mean) * (s - out.mean);
  out.sd = std::sqrt(var / static_cast<double>(scores.size()));
  return out;
}

double human_ratio(double system_score, double human_mean) {
  if (!(human_mean > 0.0)) throw std::invalid_argument("human mean must be positive");
  return 100.0 * system_score / human_mean;
}

std::vector<double> m2_leave_one_out_scores(const std::vector<GoldAnnotation>& gold, const M2Options& opts) {
  std::size_t annotators = 0;
  for (const auto& g : gold) annotators = std::max(annotators, g.edit_sets.size());
  if (annotators < 2) throw std::invalid_argument("leave-one-out needs at least two annotators");
  std::vector<double> scores;
  for (std::size_t held = 0; held < annotators; ++held) {
    std::vector<GoldAnnotation> rest;
    Corpus hyps;
    for (const auto& g : gold) {
      GoldAnnotation r{g.source, {}};
      for (std::size_t a = 0; a < annotators; ++a) {
        if (a == held) continue;
        r.edit_sets.push_back(a < g.edit_sets.size() ? g.edit_sets[a] : EditSet{});
      }
      hyps.push_back(held < g.edit_sets.size() ? apply_edits(g.source, g.edit_sets[held]) : g.source);
      rest.push_back(std::move(r));
    }
    scores.push_back(m2_evaluate(rest, hyps, opts).f_score);
  }
  return scores;
}

std::vector<double> gleu_leave_one_out_scores(const Corpus& sources,
                                              const std::vector<std::vector<TokenSentence>>& references,
                                              const GleuConfig& cfg) {
  std::size_t count = references.empty() ? 0 : references.front().size();
  for (const auto& r : references)
    if (r.size() != count) throw std::invalid_argument("every sentence needs the same number of references");
  if (count < 2) throw std::invalid_argument("leave-one-out needs at least two references");
  std::vector<double> scores;
  for (std::size_t held = 0; held < count; ++held) {
    Corpus hyps;
    std::vector<std::vector<TokenSentence>> rest(references.size());
    for (std::size_t i = 0; i < references.size(); ++i) {
      hyps.push_back(references[i][held]);
      for (std::size_t a = 0; a < count; ++a)
        if (a != held) rest[i].push_back(references[i][a]);
    }
    scores.push_back(gleu_evaluate(sources, rest, hyps, cfg));
  }
  return scores;
}

}  // namespace gecx
