#pragma once

#include <span>
#include <vector>

#include "gecx/gleu.hpp"
#include "gecx/m2.hpp"

namespace gecx {

// Published human-level averages (percent): CoNLL-2014 with ten annotators
// (M2), and JFLEG test with four references (GLEU).
inline constexpr double kConll10HumanM2 = 72.15;
inline constexpr double kJflegHumanGleu = 62.38;

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
};

// Throws std::invalid_argument with fewer than two scores.
MeanSd human_leave_one_out(std::span<const double> scores);

// 100 * system / human_mean. Throws std::invalid_argument when human_mean <= 0.
double human_ratio(double system_score, double human_mean);

// F score of each annotator's corrected text against the remaining
// annotators. Annotators missing from a sentence count as proposing no edits.
std::vector<double> m2_leave_one_out_scores(const std::vector<GoldAnnotation>& gold, const M2Options& opts = {});

// GLEU of each reference against the remaining references.
std::vector<double> gleu_leave_one_out_scores(const Corpus& sources,
                                              const std::vector<std::vector<TokenSentence>>& references,
                                              const GleuConfig& cfg = {});

}  // namespace gecx
