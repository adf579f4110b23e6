#include "gecx/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "gecx/parallel.hpp"

namespace gecx {
namespace {

void add_into(MetricStats& total, const MetricStats& s, double sign = 1.0) {
  for (std::size_t k = 0; k < total.size(); ++k) total[k] += sign * s[k];
}

// Hypotheses as sparse vectors over a shared feature index.
struct IndexedFeatures {
  std::vector<std::string> names;
  // vectors[list][hyp] = (feature index, value)
  std::vector<std::vector<std::vector<std::pair<std::size_t, double>>>> vectors;

  explicit IndexedFeatures(const std::vector<NBestList>& nbests, const LinearModel& init) {
    std::unordered_map<std::string, std::size_t> index;
    auto id = [&](const std::string& name) {
      auto [it, inserted] = index.emplace(name, names.size());
      if (inserted) names.push_back(name);
      return it->second;
    };
    for (const auto& [name, w] : init.weights()) id(name);
    for (const auto& list : nbests) {
      auto& out = vectors.emplace_back();
      for (const auto& h : list.hypotheses) {
        auto& v = out.emplace_back();
        for (const auto& [name, value] : h.flat_features()) v.emplace_back(id(name), value);
      }
    }
  }

  std::vector<double> dense(const LinearModel& m) const {
    std::vector<double> w(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) w[i] = m.weight(names[i]);
    return w;
  }

  LinearModel model(const std::vector<double>& w) const {
    LinearModel m;
    for (std::size_t i = 0; i < names.size(); ++i) m.set(names[i], w[i]);
    return m;
  }

  double dot(const std::vector<double>& w, std::size_t list, std::size_t hyp) const {
    double s = 0.0;
    for (const auto& [i, v] : vectors[list][hyp]) s += w[i] * v;
    return s;
  }

  std::size_t argmax(const std::vector<double>& w, std::size_t list) const {
    std::size_t best = 0;
    double best_score = dot(w, list, 0);
    for (std::size_t h = 1; h < vectors[list].size(); ++h) {
      double s = dot(w, list, h);
      if (s > best_score) {
        best = h;
        best_score = s;
      }
    }
    return best;
  }
};

struct Segment {
  std::size_t hyp;
  double start;  // envelope segment begins here (−inf for the first)
};

// Upper envelope of lines a_h + gamma * b_h, left to right.
std::vector<Segment> upper_envelope(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (b[x] != b[y]) return b[x] < b[y];
    return a[x] > a[y];
  });
  std::vector<Segment> hull;
  for (std::size_t idx : order) {
    if (!hull.empty() && b[hull.back().hyp] == b[idx]) continue;
    double start = -std::numeric_limits<double>::infinity();
    while (!hull.empty()) {
      const auto& top = hull.back();
      double x = (a[top.hyp] - a[idx]) / (b[idx] - b[top.hyp]);
      if (x <= top.start) {
        hull.pop_back();
        continue;
      }
      start = x;
      break;
    }
    hull.push_back({idx, start});
  }
  return hull;
}

double choose_gamma(double lower, double upper) {
  if (lower <= 0.0 && 0.0 <= upper) return 0.0;
  if (std::isinf(lower) && std::isinf(upper)) return 0.0;
  if (std::isinf(lower)) return upper - 1.0;
  if (std::isinf(upper)) return lower + 1.0;
  return 0.5 * (lower + upper);
}

}  // namespace

StatsTable collect_stats(const std::vector<NBestList>& nbests, const CorpusMetric& metric, std::size_t jobs) {
  StatsTable table(nbests.size());
  parallel_for(nbests.size(), jobs, [&](std::size_t i) {
    for (const auto& h : nbests[i].hypotheses) {
      table[i].push_back(metric.sentence_stats(nbests[i].sentence_id, h.tokens));
    }
  });
  return table;
}

double corpus_score(const std::vector<NBestList>& nbests, const StatsTable& stats, const CorpusMetric& metric,
                    const LinearModel& model) {
  MetricStats total(metric.num_stats(), 0.0);
  for (std::size_t i = 0; i < nbests.size(); ++i) add_into(total, stats[i][best_index(nbests[i], model)]);
  return metric.score(total);
}

std::vector<std::string> dense_feature_names(const std::vector<NBestList>& nbests) {
  std::map<std::string, std::size_t> seen;
  std::vector<std::string> order;
  std::size_t hyps = 0;
  for (const auto& list : nbests) {
    for (const auto& h : list.hypotheses) {
      ++hyps;
      for (const auto& [name, v] : h.flat_features()) {
        if (seen[name]++ == 0) order.push_back(name);
      }
    }
  }
  std::vector<std::string> out;
  for (const auto& name : order)
    if (seen[name] == hyps) out.push_back(name);
  return out;
}

LineSearchResult line_search(const std::vector<NBestList>& nbests, const StatsTable& stats,
                             const CorpusMetric& metric, const LinearModel& base, const LinearModel& direction,
                             double lo, double hi) {
  struct Event {
    double gamma;
    std::size_t list;
    std::size_t hyp;
  };
  std::vector<Event> events;
  MetricStats total(metric.num_stats(), 0.0);
  std::vector<std::size_t> current(nbests.size());
  for (std::size_t i = 0; i < nbests.size(); ++i) {
    std::vector<double> a, b;
    for (const auto& h : nbests[i].hypotheses) {
      a.push_back(base.score(h));
      b.push_back(direction.score(h));
    }
    auto hull = upper_envelope(a, b);
    current[i] = hull.front().hyp;
    add_into(total, stats[i][current[i]]);
    for (std::size_t s = 1; s < hull.size(); ++s) events.push_back({hull[s].start, i, hull[s].hyp});
  }
  std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.gamma < y.gamma; });

  bool have = false;
  LineSearchResult best;
  auto consider = [&](double l, double r) {
    l = std::max(l, lo);
    r = std::min(r, hi);
    if (l > r || (l == r && !(lo == hi))) return;
    double s = metric.score(total);
    double g = choose_gamma(l, r);
    if (!have || s > best.score || (s == best.score && std::abs(g) < std::abs(best.gamma))) {
      best = {g, s, l, r};
      have = true;
    }
  };

  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < events.size();) {
    double g = events[e].gamma;
    consider(prev, g);
    for (; e < events.size() && events[e].gamma == g; ++e) {
      add_into(total, stats[events[e].list][current[events[e].list]], -1.0);
      current[events[e].list] = events[e].hyp;
      add_into(total, stats[events[e].list][current[events[e].list]]);
    }
    prev = g;
  }
  consider(prev, std::numeric_limits<double>::infinity());
  if (!have) throw std::invalid_argument("empty line-search range");
  return best;
}

TuneResult mert_tune(const std::vector<NBestList>& nbests, const CorpusMetric& metric, const LinearModel& init,
                     const MertOptions& opts) {
  if (!metric.decomposable()) throw std::invalid_argument("MERT needs a decomposable metric");
  auto stats = collect_stats(nbests, metric);
  auto dims = dense_feature_names(nbests);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  TuneResult result{init, corpus_score(nbests, stats, metric, init), {}};
  result.history.push_back(result.score);
  if (dims.empty()) return result;

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    std::vector<LinearModel> directions;
    for (const auto& d : dims) directions.push_back(LinearModel({{d, 1.0}}));
    for (std::size_t r = 0; r < opts.random_directions; ++r) {
      std::vector<double> v(dims.size());
      double norm = 0.0;
      for (auto& x : v) {
        x = normal(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      LinearModel dir;
      for (std::size_t k = 0; k < dims.size(); ++k) dir.set(dims[k], norm > 0 ? v[k] / norm : 0.0);
      directions.push_back(std::move(dir));
    }

    const LinearModel* best_dir = nullptr;
    LineSearchResult best_move{0.0, result.score, 0.0, 0.0};
    for (const auto& dir : directions) {
      auto r = line_search(nbests, stats, metric, result.model, dir);
      if (r.score > best_move.score) {
        best_move = r;
        best_dir = &dir;
      }
    }
    if (!best_dir || best_move.score <= result.score + opts.min_gain) break;

    LinearModel moved = result.model;
    for (const auto& [name, w] : best_dir->weights()) moved.set(name, moved.weight(name) + best_move.gamma * w);
    double actual = corpus_score(nbests, stats, metric, moved);
    if (actual <= result.score) break;
    result.model = std::move(moved);
    result.score = actual;
    result.history.push_back(actual);
  }
  return result;
}

TuneResult mira_tune(const std::vector<NBestList>& nbests, const CorpusMetric& metric, const LinearModel& init,
                     const MiraOptions& opts) {
  if (!(opts.C > 0.0)) throw std::invalid_argument("MIRA needs C > 0");
  if (opts.epochs < 1) throw std::invalid_argument("MIRA needs at least one epoch");
  auto stats = collect_stats(nbests, metric);
  IndexedFeatures feats(nbests, init);
  const std::size_t lists = nbests.size();
  const double scale = static_cast<double>(lists);

  TuneResult result{init, corpus_score(nbests, stats, metric, init), {}};
  result.history.push_back(result.score);
  if (lists == 0) return result;

  std::vector<double> w = feats.dense(init);
  std::vector<double> avg_sum(w.size(), 0.0);
  std::size_t updates = 0;
  std::vector<std::size_t> current(lists);
  MetricStats background(metric.num_stats(), 0.0);
  for (std::size_t i = 0; i < lists; ++i) {
    current[i] = feats.argmax(w, i);
    add_into(background, stats[i][current[i]]);
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<std::size_t> order(lists);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const std::size_t n = nbests[i].hypotheses.size();
      MetricStats rest = background;
      add_into(rest, stats[i][current[i]], -1.0);
      std::size_t hope = 0, fear = 0;
      double hope_v = 0, fear_v = 0;
      std::vector<double> model(n), gain(n);
      for (std::size_t h = 0; h < n; ++h) {
        MetricStats with = rest;
        add_into(with, stats[i][h]);
        gain[h] = scale * metric.score(with);
        model[h] = feats.dot(w, i, h);
        double hv = model[h] + gain[h], fv = model[h] - gain[h];
        if (h == 0 || hv > hope_v) hope = h, hope_v = hv;
        if (h == 0 || fv > fear_v) fear = h, fear_v = fv;
      }
      std::map<std::size_t, double> delta;
      for (const auto& [k, v] : feats.vectors[i][hope]) delta[k] += v;
      for (const auto& [k, v] : feats.vectors[i][fear]) delta[k] -= v;
      double norm2 = 0.0;
      for (const auto& [k, v] : delta) norm2 += v * v;
      double loss = (gain[hope] - gain[fear]) - (model[hope] - model[fear]);
      if (loss > 0.0 && norm2 > 0.0) {
        double eta = std::min(opts.C, loss / norm2);
        for (const auto& [k, v] : delta) w[k] += eta * v;
      }
      std::size_t now = feats.argmax(w, i);
      add_into(background, stats[i][current[i]], -1.0);
      add_into(background, stats[i][now]);
      current[i] = now;
      for (std::size_t k = 0; k < w.size(); ++k) avg_sum[k] += w[k];
      ++updates;
    }
    std::vector<double> avg(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) avg[k] = avg_sum[k] / static_cast<double>(updates);
    auto avg_model = feats.model(avg);
    double s = corpus_score(nbests, stats, metric, avg_model);
    result.history.push_back(s);
    if (s > result.score) {
      result.score = s;
      result.model = std::move(avg_model);
    }
  }
  return result;
}

GridResult grid_search_weight(const std::vector<NBestList>& nbests, const CorpusMetric& metric,
                              const LinearModel& base, const std::string& feature, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  bool present = false;
  for (const auto& list : nbests)
    for (const auto& h : list.hypotheses) present = present || h.feature(feature).has_value();
  if (!present) throw DataError("feature '" + feature + "' does not occur in any hypothesis");

  auto stats = collect_stats(nbests, metric);
  GridResult r;
  bool have = false;
  for (double g : grid) {
    LinearModel m = base;
    m.set(feature, g);
    double s = corpus_score(nbests, stats, metric, m);
    r.evaluated.emplace_back(g, s);
    if (!have || s > r.score || (s == r.score && g < r.weight)) {
      r.weight = g;
      r.score = s;
      have = true;
    }
  }
  return r;
}

std::vector<double> default_lm_grid() {
  return {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
}

LinearModel average_weights(std::span<const LinearModel> models) {
  if (models.empty()) throw std::invalid_argument("no models to average");
  std::map<std::string, double> sum;
  for (const auto& m : models)
    for (const auto& [name, w] : m.weights()) sum[name] += w;
  LinearModel out;
  for (const auto& [name, s] : sum) out.set(name, s / static_cast<double>(models.size()));
  return out;
}

std::vector<TuneResult> cross_validate(const std::vector<NBestList>& nbests, const LinearModel& init,
                                       std::size_t folds, const Tuner& tuner) {
  if (folds < 2) throw std::invalid_argument("cross-validation needs at least two folds");
  std::vector<TuneResult> out;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<NBestList> train;
    for (std::size_t i = 0; i < nbests.size(); ++i)
      if (i % folds != f) train.push_back(nbests[i]);
    out.push_back(tuner(train, init));
  }
  return out;
}

}  // namespace gecx
