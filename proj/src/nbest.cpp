#include "gecx/nbest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "gecx/format.hpp"

namespace gecx {
namespace {

std::vector<std::string> split_bars(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find("|||", start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 3;
  }
  return out;
}

std::string expanded_name(const FeatureGroup& g, std::size_t i) {
  return g.values.size() == 1 ? g.name : g.name + std::to_string(i);
}

}  // namespace

std::vector<std::pair<std::string, double>> Hypothesis::flat_features() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& g : features)
    for (std::size_t i = 0; i < g.values.size(); ++i) out.emplace_back(expanded_name(g, i), g.values[i]);
  return out;
}

std::optional<double> Hypothesis::feature(const std::string& name) const {
  for (const auto& g : features)
    for (std::size_t i = 0; i < g.values.size(); ++i)
      if (expanded_name(g, i) == name) return g.values[i];
  return std::nullopt;
}

void Hypothesis::add_group(FeatureGroup group) {
  if (group.values.empty()) throw DataError("feature '" + group.name + "' has no values");
  for (std::size_t i = 0; i < group.values.size(); ++i) {
    auto name = expanded_name(group, i);
    if (feature(name)) throw DataError("feature name collision: " + name);
    if (!std::isfinite(group.values[i])) throw DataError("non-finite value for feature " + name);
  }
  features.push_back(std::move(group));
}

void Hypothesis::add_feature(const std::string& name, double value) { add_group({name, {value}}); }

std::vector<NBestList> parse_nbest(std::istream& in) {
  std::vector<NBestList> lists;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (line.empty()) continue;
    auto where = [&] { return "n-best line " + std::to_string(lineno) + ": "; };
    auto fields = split_bars(line);
    if (fields.size() != 4) throw DataError(where() + "expected 4 '|||'-separated fields");
    auto id_text = split_whitespace(fields[0]);
    std::size_t id = 0;
    if (id_text.size() != 1) throw DataError(where() + "bad sentence id");
    auto [ptr, ec] = std::from_chars(id_text[0].data(), id_text[0].data() + id_text[0].size(), id);
    if (ec != std::errc() || ptr != id_text[0].data() + id_text[0].size()) throw DataError(where() + "bad sentence id");
    if (!lists.empty() && id < lists.back().sentence_id) throw DataError(where() + "sentence ids must not decrease");

    Hypothesis h;
    h.tokens = parse_tokens(fields[1], id);
    for (const auto& tok : split_whitespace(fields[2])) {
      if (tok.size() > 1 && tok.back() == '=') {
        h.features.push_back({tok.substr(0, tok.size() - 1), {}});
        continue;
      }
      auto v = parse_number(tok);
      if (!v) throw DataError(where() + "bad feature value '" + tok + "'");
      if (h.features.empty()) throw DataError(where() + "feature value before any name");
      h.features.back().values.push_back(*v);
    }
    std::set<std::string> names;
    for (const auto& g : h.features) {
      if (g.values.empty()) throw DataError(where() + "feature '" + g.name + "' has no values");
    }
    for (const auto& [name, value] : h.flat_features()) {
      if (!names.insert(name).second) throw DataError(where() + "duplicate feature " + name);
    }
    auto total = split_whitespace(fields[3]);
    std::optional<double> score;
    if (total.size() == 1) score = parse_number(total[0]);
    if (!score || !std::isfinite(*score)) throw DataError(where() + "bad total score");
    h.model_score = *score;

    if (lists.empty() || lists.back().sentence_id != id) lists.push_back({id, {}});
    lists.back().hypotheses.push_back(std::move(h));
  }
  return lists;
}

std::vector<NBestList> parse_nbest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return parse_nbest(in);
}

void write_nbest(std::ostream& out, const std::vector<NBestList>& lists) {
  for (const auto& list : lists) {
    for (const auto& h : list.hypotheses) {
      out << list.sentence_id << " ||| " << join(h.tokens) << " |||";
      for (const auto& g : h.features) {
        out << ' ' << g.name << '=';
        for (double v : g.values) out << ' ' << format_number(v);
      }
      out << " ||| " << format_number(h.model_score) << '\n';
    }
  }
}

void write_nbest_file(const std::string& path, const std::vector<NBestList>& lists) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  write_nbest(out, lists);
}

LinearModel::LinearModel(std::map<std::string, double> weights) {
  for (const auto& [name, w] : weights) set(name, w);
}

double LinearModel::weight(const std::string& name) const {
  auto it = weights_.find(name);
  return it == weights_.end() ? 0.0 : it->second;
}

void LinearModel::set(const std::string& name, double w) {
  if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight for " + name);
  weights_[name] = w;
}

double LinearModel::score(const Hypothesis& h) const {
  double s = 0.0;
  for (const auto& g : h.features)
    for (std::size_t i = 0; i < g.values.size(); ++i) s += weight(expanded_name(g, i)) * g.values[i];
  return s;
}

LinearModel LinearModel::load(std::istream& in) {
  LinearModel m;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    auto fields = split_whitespace(line);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    std::optional<double> w;
    if (fields.size() == 2) w = parse_number(fields[1]);
    if (!w || !std::isfinite(*w)) throw DataError("weights line " + std::to_string(lineno) + ": expected 'name value'");
    m.set(fields[0], *w);
  }
  return m;
}

LinearModel LinearModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return load(in);
}

void LinearModel::save(std::ostream& out) const {
  for (const auto& [name, w] : weights_) out << name << ' ' << format_number(w) << '\n';
}

std::size_t best_index(const NBestList& nbest, const LinearModel& model) {
  if (nbest.hypotheses.empty()) throw std::invalid_argument("empty n-best list");
  std::size_t best = 0;
  double best_score = model.score(nbest.hypotheses[0]);
  for (std::size_t i = 1; i < nbest.hypotheses.size(); ++i) {
    double s = model.score(nbest.hypotheses[i]);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

const Hypothesis& linear_rescore(const NBestList& nbest, const LinearModel& model) {
  return nbest.hypotheses[best_index(nbest, model)];
}

NBestList rerank(const NBestList& nbest, const LinearModel& model) {
  NBestList out = nbest;
  for (auto& h : out.hypotheses) h.model_score = model.score(h);
  std::stable_sort(out.hypotheses.begin(), out.hypotheses.end(),
                   [](const Hypothesis& a, const Hypothesis& b) { return a.model_score > b.model_score; });
  return out;
}

}  // namespace gecx
