#include "gecx/gleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace gecx {
namespace {

using NgramCounts = std::map<std::vector<std::string>, long>;

NgramCounts ngrams(const TokenSentence& s, int n) {
  NgramCounts out;
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + len <= s.size(); ++i) {
    ++out[std::vector<std::string>(s.tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                   s.tokens.begin() + static_cast<std::ptrdiff_t>(i + len))];
  }
  return out;
}

long count_in(const NgramCounts& c, const std::vector<std::string>& g) {
  auto it = c.find(g);
  return it == c.end() ? 0 : it->second;
}

}  // namespace

std::vector<double> gleu_sentence_stats(const TokenSentence& source, const TokenSentence& reference,
                                        const TokenSentence& hypothesis, int max_n) {
  std::vector<double> stats;
  stats.reserve(2 + 2 * static_cast<std::size_t>(max_n));
  stats.push_back(static_cast<double>(hypothesis.size()));
  stats.push_back(static_cast<double>(reference.size()));
  for (int n = 1; n <= max_n; ++n) {
    auto h = ngrams(hypothesis, n);
    auto r = ngrams(reference, n);
    auto s = ngrams(source, n);
    long match = 0, penalty = 0;
    for (const auto& [g, hc] : h) {
      long rc = count_in(r, g);
      match += std::min(hc, rc);
      penalty += std::min(hc, std::max(0L, count_in(s, g) - rc));
    }
    stats.push_back(static_cast<double>(std::max(0L, match - penalty)));
    stats.push_back(static_cast<double>(std::max(0L, static_cast<long>(hypothesis.size()) - n + 1)));
  }
  return stats;
}

double gleu_from_stats(const std::vector<double>& stats, int max_n) {
  for (double v : stats)
    if (v == 0.0) return 0.0;
  const double hyp_len = stats[0];
  const double ref_len = stats[1];
  double log_prec = 0.0;
  for (int n = 0; n < max_n; ++n) {
    log_prec += std::log(stats[2 + 2 * static_cast<std::size_t>(n)] / stats[3 + 2 * static_cast<std::size_t>(n)]);
  }
  return std::exp(std::min(0.0, 1.0 - ref_len / hyp_len) + log_prec / max_n);
}

double gleu_evaluate(const Corpus& sources, const std::vector<std::vector<TokenSentence>>& references,
                     const Corpus& hypotheses, const GleuConfig& cfg) {
  if (cfg.max_n < 1 || cfg.iterations < 1) throw std::invalid_argument("GLEU needs max_n >= 1 and iterations >= 1");
  if (sources.size() != hypotheses.size() || references.size() != hypotheses.size()) {
    throw std::invalid_argument("GLEU inputs differ in length");
  }
  const std::size_t width = 2 + 2 * static_cast<std::size_t>(cfg.max_n);
  bool single = true;
  // Per sentence, the statistics against each of its references.
  std::vector<std::vector<std::vector<double>>> per_ref(hypotheses.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (references[i].empty()) throw std::invalid_argument("sentence " + std::to_string(i) + " has no reference");
    single = single && references[i].size() == 1;
    for (const auto& ref : references[i]) {
      per_ref[i].push_back(gleu_sentence_stats(sources[i], ref, hypotheses[i], cfg.max_n));
    }
  }

  auto score_with = [&](auto&& pick) {
    std::vector<double> total(width, 0.0);
    for (std::size_t i = 0; i < per_ref.size(); ++i) {
      const auto& st = per_ref[i][pick(i)];
      for (std::size_t k = 0; k < width; ++k) total[k] += st[k];
    }
    return gleu_from_stats(total, cfg.max_n);
  };

  if (single) return score_with([](std::size_t) { return std::size_t{0}; });

  double sum = 0.0;
  for (int it = 0; it < cfg.iterations; ++it) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(it)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> picks(per_ref.size());
    for (std::size_t i = 0; i < per_ref.size(); ++i) picks[i] = rng() % per_ref[i].size();
    sum += score_with([&](std::size_t i) { return picks[i]; });
  }
  return sum / cfg.iterations;
}

std::vector<std::vector<TokenSentence>> transpose_references(const std::vector<Corpus>& by_annotator) {
  std::vector<std::vector<TokenSentence>> out;
  if (by_annotator.empty()) return out;
  out.resize(by_annotator.front().size());
  for (const auto& corpus : by_annotator) {
    if (corpus.size() != out.size()) throw std::invalid_argument("reference files differ in length");
    for (std::size_t i = 0; i < corpus.size(); ++i) out[i].push_back(corpus[i]);
  }
  return out;
}

}  // namespace gecx
