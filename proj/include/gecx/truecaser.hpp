#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "gecx/sentence.hpp"

namespace gecx {

// Per lowercased form, the counts of every observed surface casing.
class TruecaseModel {
 public:
  // Counts every token except the sentence-initial one.
  // Throws DataError("no training data") on an empty corpus.
  static TruecaseModel train(const Corpus& corpus);

  // "surface<TAB>count" lines; counts for the same surface accumulate.
  static TruecaseModel load(std::istream& in);
  static TruecaseModel load_file(const std::string& path);
  void save(std::ostream& out) const;

  void add(const std::string& surface, long count = 1);

  // Most frequent casing; ties go to the lexicographically smallest.
  std::optional<std::string> best_casing(const std::string& lowercase) const;

  // Rewrites token 0 only; unknown forms pass through.
  TokenSentence apply(const TokenSentence& s) const;

  const std::map<std::string, std::map<std::string, long>>& table() const { return table_; }

 private:
  std::map<std::string, std::map<std::string, long>> table_;
};

}  // namespace gecx
