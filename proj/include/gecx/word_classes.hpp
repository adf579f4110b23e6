#pragma once

#include <istream>
#include <set>
#include <string>
#include <unordered_map>

#include "gecx/sentence.hpp"

namespace gecx {

// Word -> class-id map; total through the reserved unknown class.
class WordClassMap {
 public:
  static constexpr const char* kUnknownClass = "UNK-CLASS";

  // "word<TAB>class-id" lines; the last entry for a word wins.
  // Throws DataError naming the line number on malformed lines.
  static WordClassMap load(std::istream& in);
  static WordClassMap load_file(const std::string& path);

  void set(const std::string& word, const std::string& cls) { map_[word] = cls; }
  const std::string& class_of(const std::string& word) const;

  // Every class id the map can return, including the unknown class.
  std::set<std::string> inventory() const;
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::string, std::string> map_;
  std::string unknown_ = kUnknownClass;
};

// Token-wise replacement by class ids.
TokenSentence project_to_classes(const TokenSentence& s, const WordClassMap& classes);
Corpus project_to_classes(const Corpus& corpus, const WordClassMap& classes);

}  // namespace gecx
