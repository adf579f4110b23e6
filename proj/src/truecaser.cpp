#include "gecx/truecaser.hpp"

#include <charconv>
#include <fstream>

namespace gecx {

TruecaseModel TruecaseModel::train(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("no training data");
  TruecaseModel model;
  for (const auto& s : corpus)
    for (std::size_t i = 1; i < s.size(); ++i) model.add(s[i]);
  return model;
}

void TruecaseModel::add(const std::string& surface, long count) {
  if (count < 1) throw DataError("truecase count must be >= 1 for '" + surface + "'");
  table_[ascii_lower(surface)][surface] += count;
}

std::optional<std::string> TruecaseModel::best_casing(const std::string& lowercase) const {
  auto it = table_.find(lowercase);
  if (it == table_.end()) return std::nullopt;
  const std::string* best = nullptr;
  long best_count = 0;
  // std::map iterates in lexicographic order, so strict '>' keeps the smallest on ties.
  for (const auto& [surface, count] : it->second) {
    if (count > best_count) {
      best = &surface;
      best_count = count;
    }
  }
  return *best;
}

TokenSentence TruecaseModel::apply(const TokenSentence& s) const {
  TokenSentence out = s;
  if (out.empty()) return out;
  if (auto best = best_casing(ascii_lower(out.tokens[0]))) out.tokens[0] = *best;
  return out;
}

TruecaseModel TruecaseModel::load(std::istream& in) {
  TruecaseModel model;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    long count = 0;
    if (tab == std::string::npos || tab == 0) {
      throw DataError("truecase model line " + std::to_string(lineno) + ": expected surface<TAB>count");
    }
    auto [ptr, ec] = std::from_chars(line.data() + tab + 1, line.data() + line.size(), count);
    if (ec != std::errc() || ptr != line.data() + line.size() || count < 1) {
      throw DataError("truecase model line " + std::to_string(lineno) + ": bad count");
    }
    model.add(line.substr(0, tab), count);
  }
  return model;
}

TruecaseModel TruecaseModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return load(in);
}

void TruecaseModel::save(std::ostream& out) const {
  for (const auto& [lower, casings] : table_)
    for (const auto& [surface, count] : casings) out << surface << '\t' << count << '\n';
}

}  // namespace gecx
