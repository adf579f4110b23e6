#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gecx/sentence.hpp"

namespace gecx {

// Byte-pair-encoding merge table. Symbols are UTF-8 code point sequences;
// the last symbol of a word carries the internal end-of-word sentinel "</w>"
// during learning and application. Output units use the "@@" continuation
// marker on every unit except the last of a token.
class BpeModel {
 public:
  using Pair = std::pair<std::string, std::string>;

  static constexpr const char* kEndOfWord = "</w>";
  static constexpr const char* kContinuation = "@@";

  BpeModel() = default;
  // Throws DataError on duplicate pairs.
  explicit BpeModel(std::vector<Pair> merges);

  // Greedy learning over token frequencies: merge the most frequent
  // adjacent pair (ties: lexicographically smallest pair) until num_merges
  // merges exist or the best pair occurs fewer than twice.
  static BpeModel learn(const Corpus& corpus, std::size_t num_merges);

  // One "left right" pair per line, in merge order.
  static BpeModel load(std::istream& in);
  static BpeModel load_file(const std::string& path);
  void save(std::ostream& out) const;

  const std::vector<Pair>& merges() const { return merges_; }

  // Subword units of one token, without continuation markers.
  std::vector<std::string> segment(const std::string& token) const;
  std::size_t fragment_count(const std::string& token) const { return segment(token).size(); }

  TokenSentence apply(const TokenSentence& s) const;
  static TokenSentence unapply(const TokenSentence& s);

 private:
  std::vector<Pair> merges_;
  std::map<Pair, std::size_t> rank_;
};

}  // namespace gecx
