#include "gecx/corrector.hpp"

#include <fstream>
#include <stdexcept>

namespace gecx {

FileCorrector::FileCorrector(std::vector<NBestList> lists) {
  for (auto& l : lists) {
    if (l.hypotheses.empty()) throw DataError("empty n-best list for id " + std::to_string(l.sentence_id));
    auto id = l.sentence_id;
    if (!lists_.emplace(id, std::move(l)).second) throw DataError("duplicate n-best id " + std::to_string(id));
  }
}

FileCorrector FileCorrector::from_file(const std::string& path) { return FileCorrector(parse_nbest_file(path)); }

NBestList FileCorrector::correct(std::size_t sentence_id, const TokenSentence&) const {
  auto it = lists_.find(sentence_id);
  if (it == lists_.end()) throw DataError("no n-best list for sentence id " + std::to_string(sentence_id));
  return it->second;
}

RuleCorrector::RuleCorrector(std::vector<RewriteRule> rules) : rules_(std::move(rules)) {
  for (const auto& r : rules_)
    if (r.pattern.empty()) throw std::invalid_argument("rewrite rule with an empty pattern");
}

RuleCorrector RuleCorrector::load(std::istream& in) {
  std::vector<RewriteRule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (split_whitespace(line).empty()) continue;
    auto sep = line.find("|||");
    if (sep == std::string::npos) throw DataError("rules line " + std::to_string(lineno) + ": missing '|||'");
    RewriteRule r{split_whitespace(line.substr(0, sep)), split_whitespace(line.substr(sep + 3))};
    if (r.pattern.empty()) throw DataError("rules line " + std::to_string(lineno) + ": empty pattern");
    rules.push_back(std::move(r));
  }
  return RuleCorrector(std::move(rules));
}

RuleCorrector RuleCorrector::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load(in);
}

TokenSentence RuleCorrector::rewrite(const TokenSentence& input) const {
  const auto& t = input.tokens;
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < t.size()) {
    const RewriteRule* best = nullptr;
    for (const auto& r : rules_) {
      if (r.pattern.size() > t.size() - i) continue;
      if (best && r.pattern.size() <= best->pattern.size()) continue;
      if (std::equal(r.pattern.begin(), r.pattern.end(), t.begin() + static_cast<std::ptrdiff_t>(i))) best = &r;
    }
    if (best) {
      out.insert(out.end(), best->replacement.begin(), best->replacement.end());
      i += best->pattern.size();
    } else {
      out.push_back(t[i++]);
    }
  }
  return TokenSentence(std::move(out), input.id);
}

NBestList RuleCorrector::correct(std::size_t sentence_id, const TokenSentence& input) const {
  NBestList l;
  l.sentence_id = sentence_id;
  l.hypotheses.push_back(Hypothesis{rewrite(input), {}, 0.0});
  return l;
}

NBestList IdentityCorrector::correct(std::size_t sentence_id, const TokenSentence& input) const {
  NBestList l;
  l.sentence_id = sentence_id;
  l.hypotheses.push_back(Hypothesis{input, {}, 0.0});
  return l;
}

void combine_ensemble_scores(std::vector<NBestList>& nbests,
                             const std::vector<std::vector<std::vector<double>>>& columns,
                             const std::vector<double>& weights) {
  if (columns.size() != weights.size()) throw std::invalid_argument("one weight per score column required");
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != nbests.size())
      throw DataError("score column " + std::to_string(c) + " covers " + std::to_string(columns[c].size()) +
                      " lists, expected " + std::to_string(nbests.size()));
    for (std::size_t i = 0; i < nbests.size(); ++i)
      if (columns[c][i].size() != nbests[i].hypotheses.size())
        throw DataError("score column " + std::to_string(c) + " misses hypotheses of list " +
                        std::to_string(nbests[i].sentence_id));
  }
  for (std::size_t i = 0; i < nbests.size(); ++i) {
    for (std::size_t h = 0; h < nbests[i].hypotheses.size(); ++h) {
      double ens = 0.0;
      for (std::size_t c = 0; c < columns.size(); ++c) ens += weights[c] * columns[c][i][h];
      nbests[i].hypotheses[h].add_feature("ens", ens);
    }
  }
}

void combine_ensemble_features(std::vector<NBestList>& nbests, const std::vector<std::string>& feature_names,
                               const std::vector<double>& weights) {
  std::vector<std::vector<std::vector<double>>> columns(feature_names.size());
  for (std::size_t c = 0; c < feature_names.size(); ++c) {
    for (const auto& l : nbests) {
      auto& col = columns[c].emplace_back();
      for (const auto& h : l.hypotheses) {
        auto v = h.feature(feature_names[c]);
        if (!v)
          throw DataError("feature '" + feature_names[c] + "' missing in list " + std::to_string(l.sentence_id));
        col.push_back(*v);
      }
    }
  }
  combine_ensemble_scores(nbests, columns, weights);
}

}  // namespace gecx
