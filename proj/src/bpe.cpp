#include "gecx/bpe.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <tuple>

namespace gecx {
namespace {

std::vector<std::string> initial_symbols(const std::string& word) {
  auto symbols = utf8_chars(word);
  if (!symbols.empty()) symbols.back() += BpeModel::kEndOfWord;
  return symbols;
}

std::vector<std::string> merge_pair(const std::vector<std::string>& symbols, const BpeModel::Pair& pair) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size();) {
    if (i + 1 < symbols.size() && symbols[i] == pair.first && symbols[i + 1] == pair.second) {
      out.push_back(symbols[i] + symbols[i + 1]);
      i += 2;
    } else {
      out.push_back(symbols[i]);
      ++i;
    }
  }
  return out;
}

// Incrementally maintained pair statistics for learning.
class PairStats {
 public:
  void add_word(std::size_t idx, const std::vector<std::string>& symbols, long freq) {
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      BpeModel::Pair p{symbols[i], symbols[i + 1]};
      adjust(p, freq);
      where_[p].insert(idx);
    }
  }

  void remove_word(std::size_t idx, const std::vector<std::string>& symbols, long freq) {
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      BpeModel::Pair p{symbols[i], symbols[i + 1]};
      adjust(p, -freq);
      auto it = where_.find(p);
      if (it != where_.end()) {
        it->second.erase(idx);
        if (it->second.empty()) where_.erase(it);
      }
    }
  }

  // (count, pair) of the best pair; count 0 when none remain.
  std::pair<long, BpeModel::Pair> best() const {
    if (order_.empty()) return {0, {}};
    const auto& [neg, first, second] = *order_.begin();
    return {-neg, {first, second}};
  }

  std::set<std::size_t> words_with(const BpeModel::Pair& p) const {
    auto it = where_.find(p);
    return it == where_.end() ? std::set<std::size_t>{} : it->second;
  }

 private:
  void adjust(const BpeModel::Pair& p, long delta) {
    long& count = counts_[p];
    if (count > 0) order_.erase({-count, p.first, p.second});
    count += delta;
    if (count > 0) {
      order_.insert({-count, p.first, p.second});
    } else {
      counts_.erase(p);
    }
  }

  std::map<BpeModel::Pair, long> counts_;
  std::map<BpeModel::Pair, std::set<std::size_t>> where_;
  std::set<std::tuple<long, std::string, std::string>> order_;
};

}  // namespace

BpeModel::BpeModel(std::vector<Pair> merges) : merges_(std::move(merges)) {
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    if (!rank_.emplace(merges_[i], i).second) {
      throw DataError("duplicate BPE merge '" + merges_[i].first + " " + merges_[i].second + "'");
    }
  }
}

BpeModel BpeModel::learn(const Corpus& corpus, std::size_t num_merges) {
  std::map<std::string, long> vocab;
  for (const auto& s : corpus)
    for (const auto& t : s.tokens) ++vocab[t];
  if (vocab.empty()) throw DataError("no training data");

  std::vector<std::vector<std::string>> words;
  std::vector<long> freqs;
  PairStats stats;
  for (const auto& [word, freq] : vocab) {
    words.push_back(initial_symbols(word));
    freqs.push_back(freq);
    stats.add_word(words.size() - 1, words.back(), freq);
  }

  std::vector<Pair> merges;
  while (merges.size() < num_merges) {
    auto [count, pair] = stats.best();
    if (count < 2) break;
    for (auto idx : stats.words_with(pair)) {
      stats.remove_word(idx, words[idx], freqs[idx]);
      words[idx] = merge_pair(words[idx], pair);
      stats.add_word(idx, words[idx], freqs[idx]);
    }
    merges.push_back(std::move(pair));
  }
  return BpeModel(std::move(merges));
}

std::vector<std::string> BpeModel::segment(const std::string& token) const {
  auto symbols = initial_symbols(token);
  while (symbols.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    const Pair* best = nullptr;
    Pair probe;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      probe.first = symbols[i];
      probe.second = symbols[i + 1];
      auto it = rank_.find(probe);
      if (it != rank_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = &it->first;
      }
    }
    if (!best) break;
    symbols = merge_pair(symbols, *best);
  }
  if (!symbols.empty()) {
    auto& last = symbols.back();
    last.erase(last.size() - std::char_traits<char>::length(kEndOfWord));
  }
  return symbols;
}

TokenSentence BpeModel::apply(const TokenSentence& s) const {
  TokenSentence out;
  out.id = s.id;
  for (const auto& token : s.tokens) {
    auto units = segment(token);
    for (std::size_t i = 0; i < units.size(); ++i) {
      out.tokens.push_back(i + 1 < units.size() ? units[i] + kContinuation : units[i]);
    }
  }
  return out;
}

TokenSentence BpeModel::unapply(const TokenSentence& s) {
  TokenSentence out;
  out.id = s.id;
  std::string pending;
  bool open = false;
  const std::string marker = kContinuation;
  for (const auto& unit : s.tokens) {
    if (unit.size() > marker.size() && unit.ends_with(marker)) {
      pending += unit.substr(0, unit.size() - marker.size());
      open = true;
    } else {
      out.tokens.push_back(pending + unit);
      pending.clear();
      open = false;
    }
  }
  if (open) out.tokens.push_back(pending);
  return out;
}

BpeModel BpeModel::load(std::istream& in) {
  std::vector<Pair> merges;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (line.empty() || (lineno == 1 && line.starts_with("#version"))) continue;
    auto fields = split_whitespace(line);
    if (fields.size() != 2) {
      throw DataError("BPE model line " + std::to_string(lineno) + ": expected two symbols");
    }
    merges.emplace_back(fields[0], fields[1]);
  }
  return BpeModel(std::move(merges));
}

BpeModel BpeModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return load(in);
}

void BpeModel::save(std::ostream& out) const {
  for (const auto& [a, b] : merges_) out << a << ' ' << b << '\n';
}

}  // namespace gecx
