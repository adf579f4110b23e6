#include "gecx/word_classes.hpp"

#include <fstream>

namespace gecx {

WordClassMap WordClassMap::load(std::istream& in) {
  WordClassMap classes;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    bool ok = tab != std::string::npos && tab > 0 && tab + 1 < line.size() &&
              line.find('\t', tab + 1) == std::string::npos;
    if (ok) {
      for (char c : line) ok = ok && (c == '\t' || !is_space(c));
    }
    if (!ok) {
      throw DataError("class file line " + std::to_string(lineno) + ": expected word<TAB>class-id");
    }
    classes.set(line.substr(0, tab), line.substr(tab + 1));
  }
  return classes;
}

WordClassMap WordClassMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return load(in);
}

const std::string& WordClassMap::class_of(const std::string& word) const {
  auto it = map_.find(word);
  return it == map_.end() ? unknown_ : it->second;
}

std::set<std::string> WordClassMap::inventory() const {
  std::set<std::string> out{unknown_};
  for (const auto& [word, cls] : map_) out.insert(cls);
  return out;
}

TokenSentence project_to_classes(const TokenSentence& s, const WordClassMap& classes) {
  TokenSentence out;
  out.id = s.id;
  out.tokens.reserve(s.size());
  for (const auto& t : s.tokens) out.tokens.push_back(classes.class_of(t));
  return out;
}

Corpus project_to_classes(const Corpus& corpus, const WordClassMap& classes) {
  Corpus out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) out.push_back(project_to_classes(s, classes));
  return out;
}

}  // namespace gecx
