#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gecx/corpus_metric.hpp"
#include "gecx/nbest.hpp"

namespace gecx {

// stats[list][hypothesis]
using StatsTable = std::vector<std::vector<MetricStats>>;

StatsTable collect_stats(const std::vector<NBestList>& nbests, const CorpusMetric& metric, std::size_t jobs = 1);

// Metric of the 1-best hypotheses under `model`.
double corpus_score(const std::vector<NBestList>& nbests, const StatsTable& stats, const CorpusMetric& metric,
                    const LinearModel& model);

// Feature names present in every hypothesis of every list.
std::vector<std::string> dense_feature_names(const std::vector<NBestList>& nbests);

struct LineSearchResult {
  double gamma = 0.0;  // chosen point inside the best interval
  double score = 0.0;
  double lower = 0.0;  // best interval bounds (may be infinite)
  double upper = 0.0;
};

// Exact optimum of the metric along base + gamma * direction, from the
// per-sentence upper envelopes of the lines score_h(gamma). Only gamma in
// [lo, hi] is considered. The chosen gamma is 0 when the best interval
// contains it, otherwise the interval midpoint (or 1 past a finite bound of
// an unbounded interval). Ties between intervals go to the one whose
// chosen gamma has the smallest magnitude.
LineSearchResult line_search(const std::vector<NBestList>& nbests, const StatsTable& stats,
                             const CorpusMetric& metric, const LinearModel& base, const LinearModel& direction,
                             double lo = -std::numeric_limits<double>::infinity(),
                             double hi = std::numeric_limits<double>::infinity());

struct TuneResult {
  LinearModel model;
  double score = 0.0;
  // MERT: score after each accepted move (first entry is the initial score).
  // MIRA: initial score, then the averaged weights' score after each epoch.
  std::vector<double> history;
};

struct MertOptions {
  std::size_t random_directions = 8;
  std::uint64_t seed = 42;
  std::size_t max_iterations = 100;
  double min_gain = 1e-6;
};

// Powell-style search over the dense features: each iteration line-searches
// every coordinate axis plus `random_directions` random unit directions and
// takes the best move; stops when no move gains more than min_gain.
// Throws std::invalid_argument for non-decomposable metrics.
TuneResult mert_tune(const std::vector<NBestList>& nbests, const CorpusMetric& metric, const LinearModel& init,
                     const MertOptions& opts = {});

struct MiraOptions {
  double C = 0.01;
  std::size_t epochs = 10;
  std::uint64_t seed = 42;
};

// Batch hope/fear MIRA. The metric gain of a hypothesis is the corpus score
// obtained by swapping it in for the sentence's current 1-best, scaled by the
// number of sentences. Returns the best of the initial weights and each
// epoch's averaged weights.
TuneResult mira_tune(const std::vector<NBestList>& nbests, const CorpusMetric& metric, const LinearModel& init,
                     const MiraOptions& opts = {});

struct GridResult {
  double weight = 0.0;
  double score = 0.0;
  std::vector<std::pair<double, double>> evaluated;  // (grid value, score)
};

// Throws std::invalid_argument on an empty grid, DataError when no
// hypothesis carries the feature.
GridResult grid_search_weight(const std::vector<NBestList>& nbests, const CorpusMetric& metric,
                              const LinearModel& base, const std::string& feature, std::span<const double> grid);

// 0, 0.05, ..., 0.5
std::vector<double> default_lm_grid();

// Per-feature mean; a feature missing from a model counts as 0.
LinearModel average_weights(std::span<const LinearModel> models);

using Tuner = std::function<TuneResult(const std::vector<NBestList>&, const LinearModel&)>;

// k-fold orchestration: fold f tunes on every list whose position modulo
// `folds` differs from f. Returns one result per fold.
std::vector<TuneResult> cross_validate(const std::vector<NBestList>& nbests, const LinearModel& init,
                                       std::size_t folds, const Tuner& tuner);

}  // namespace gecx
