#include "gecx/spell.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gecx/alignment.hpp"
#include "gecx/format.hpp"
#include "gecx/parallel.hpp"

namespace gecx {

Lexicon::Lexicon(std::map<std::string, long> freq) : freq_(std::move(freq)) {
  if (freq_.empty()) throw DataError("empty lexicon");
  for (const auto& [w, f] : freq_)
    if (f < 1) throw DataError("lexicon frequency below 1 for '" + w + "'");
}

Lexicon Lexicon::load(std::istream& in) {
  std::map<std::string, long> freq;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() > 2) throw DataError("lexicon line " + std::to_string(lineno) + ": expected 'word freq'");
    long f = 1;
    if (fields.size() == 2) {
      auto v = parse_number(fields[1]);
      if (!v || *v != std::floor(*v) || *v < 1)
        throw DataError("lexicon line " + std::to_string(lineno) + ": bad frequency '" + fields[1] + "'");
      f = static_cast<long>(*v);
    }
    freq[fields[0]] += f;
  }
  return Lexicon(std::move(freq));
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load(in);
}

Lexicon Lexicon::from_corpus(const Corpus& corpus) {
  std::map<std::string, long> freq;
  for (const auto& s : corpus)
    for (const auto& t : s.tokens) ++freq[t];
  return Lexicon(std::move(freq));
}

void Lexicon::save(std::ostream& out) const {
  for (const auto& [w, f] : freq_) out << w << '\t' << f << '\n';
}

long Lexicon::frequency(const std::string& w) const {
  auto it = freq_.find(w);
  return it == freq_.end() ? 0 : it->second;
}

Corpus lexicon_char_corpus(const Lexicon& lex) {
  Corpus out;
  for (const auto& [w, f] : lex.entries()) out.emplace_back(utf8_chars(w));
  return out;
}

SpellChecker::SpellChecker(std::shared_ptr<const Lexicon> lexicon, std::shared_ptr<const BpeModel> bpe,
                           std::shared_ptr<const NGramModel> char_lm, std::shared_ptr<const NGramModel> word_lm,
                           SpellOptions opts)
    : lexicon_(std::move(lexicon)),
      bpe_(std::move(bpe)),
      char_lm_(std::move(char_lm)),
      word_lm_(std::move(word_lm)),
      opts_(opts) {
  if (!lexicon_ || !bpe_ || !char_lm_ || !word_lm_) throw std::invalid_argument("spell-checker needs all models");
  if (lexicon_->size() == 0) throw DataError("empty lexicon");
  for (const auto& [w, f] : lexicon_->entries()) by_length_.emplace_back(utf8_chars(w).size(), w);
}

bool SpellChecker::triggers(const std::string& token) const {
  return !lexicon_->contains(token) && bpe_->fragment_count(token) > 1;
}

std::vector<std::string> SpellChecker::candidates(const std::string& token) const {
  const std::size_t len = utf8_chars(token).size();
  std::vector<std::string> out;
  for (const auto& [n, w] : by_length_) {
    std::size_t diff = n > len ? n - len : len - n;
    if (diff > opts_.max_distance) continue;
    if (damerau_distance(token, w) <= opts_.max_distance) out.push_back(w);
  }
  std::stable_sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    long fa = lexicon_->frequency(a), fb = lexicon_->frequency(b);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  if (out.size() > opts_.max_candidates) out.resize(opts_.max_candidates);
  return out;
}

double SpellChecker::char_score(const std::string& word) const {
  return char_lm_->score(TokenSentence(utf8_chars(word))).normalized;
}

double SpellChecker::word_score(const TokenSentence& s) const { return word_lm_->score(s).logprob; }

TokenSentence SpellChecker::correct(const TokenSentence& s, std::vector<SpellChange>* changes) const {
  TokenSentence out = s;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::string original = out.tokens[i];
    if (!triggers(original)) continue;
    auto cands = candidates(original);
    if (cands.empty()) continue;

    const double keep = opts_.lambda_char * char_score(original) + opts_.lambda_lm * word_score(out);
    std::optional<std::string> best;
    double best_score = 0.0;
    for (const auto& w : cands) {
      out.tokens[i] = w;
      double dist = static_cast<double>(damerau_distance(original, w));
      double sc = opts_.lambda_char * (-dist + char_score(w)) + opts_.lambda_lm * word_score(out) +
                  std::log(static_cast<double>(lexicon_->frequency(w)));
      if (!best || sc > best_score) {
        best = w;
        best_score = sc;
      }
    }
    if (best_score - keep > opts_.tau) {
      out.tokens[i] = *best;
      if (changes) changes->push_back({i, original, *best, best_score - keep});
    } else {
      out.tokens[i] = original;
    }
  }
  return out;
}

Corpus SpellChecker::correct_corpus(const Corpus& corpus, std::size_t jobs) const {
  Corpus out(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) { out[i] = correct(corpus[i]); });
  return out;
}

}  // namespace gecx
