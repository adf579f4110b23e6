#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gecx/sentence.hpp"

namespace gecx {

struct GleuConfig {
  int max_n = 4;
  int iterations = 500;
  std::uint64_t seed = 42;
};

// Sufficient statistics of one (source, reference, hypothesis) triple:
// [hyp_len, ref_len, num_1, den_1, ..., num_N, den_N], where
//   num_n = max(0, |hyp ∩ ref|_n - |hyp ∩ (src - ref)|_n)   (clipped multiset counts)
//   den_n = max(0, hyp_len - n + 1)
std::vector<double> gleu_sentence_stats(const TokenSentence& source, const TokenSentence& reference,
                                        const TokenSentence& hypothesis, int max_n);

// BP * exp(mean_n ln(sum num_n / sum den_n)) over summed statistics, with
// BP = min(1, exp(1 - ref_len / hyp_len)). Any zero statistic yields 0.
double gleu_from_stats(const std::vector<double>& stats, int max_n);

// references[i] holds every reference for sentence i. With a single
// reference everywhere the score is computed once; otherwise each iteration
// samples one reference per sentence (seeded) and the iteration scores are
// averaged. Throws std::invalid_argument on size mismatches or a sentence
// without references.
double gleu_evaluate(const Corpus& sources, const std::vector<std::vector<TokenSentence>>& references,
                     const Corpus& hypotheses, const GleuConfig& cfg = {});

// references_by_annotator[a][i] -> references[i][a]
std::vector<std::vector<TokenSentence>> transpose_references(const std::vector<Corpus>& references_by_annotator);

}  // namespace gecx
