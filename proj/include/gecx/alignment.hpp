#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecx/sentence.hpp"

namespace gecx {

enum class OpKind { kMatch, kSubstitute, kInsert, kDelete };

const char* to_string(OpKind kind);

// match/substitute carry both indices, insert only hyp_index, delete only src_index.
struct AlignmentOp {
  OpKind kind;
  std::optional<std::size_t> src_index;
  std::optional<std::size_t> hyp_index;

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

using Alignment = std::vector<AlignmentOp>;

struct OpCounts {
  std::size_t match = 0;
  std::size_t substitute = 0;
  std::size_t insert = 0;
  std::size_t del = 0;

  std::size_t distance() const { return substitute + insert + del; }
};

OpCounts count_ops(const Alignment& ops);

// Unit-cost Levenshtein alignment. The backtrace prefers, at every cell,
// match > substitute > delete > insert when costs tie.
Alignment align_sequences(const std::vector<std::string>& src, const std::vector<std::string>& hyp);

Alignment align_words(const TokenSentence& src, const TokenSentence& hyp);

struct CharAlignment {
  std::size_t distance = 0;
  OpCounts counts;
};

// Character (UTF-8 code point) level alignment of two tokens.
CharAlignment align_chars(std::string_view a, std::string_view b);

namespace detail {
// Tokens are short; a byte loop beats the library compare here.
inline bool same_symbol(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}
template <class T>
bool same_symbol(const T& a, const T& b) {
  return a == b;
}
}  // namespace detail

// Unit-cost Levenshtein distance from one fixed sequence to many others.
// Patterns of up to 64 symbols keep one match bitmask per distinct symbol
// and advance a whole DP row per text symbol with word operations
// (Myers/Hyyro); longer ones fall back to two rolling rows. The viewed
// sequence must outlive the object.
template <class T>
class LevenshteinPattern {
 public:
  explicit LevenshteinPattern(std::span<const T> pattern) : pattern_(pattern) {
    if (pattern.size() > 64) return;
    for (std::size_t j = 0; j < pattern.size(); ++j) {
      std::size_t k = 0;
      while (k < symbols_.size() && !detail::same_symbol(*symbols_[k], pattern[j])) ++k;
      if (k == symbols_.size()) {
        symbols_.push_back(&pattern[j]);
        masks_.push_back(0);
      }
      masks_[k] |= std::uint64_t{1} << j;
    }
  }

  std::size_t distance(std::span<const T> text) const {
    const std::size_t m = pattern_.size();
    if (m == 0) return text.size();
    if (m > 64) return rows(text);
    const std::uint64_t last = std::uint64_t{1} << (m - 1);
    std::uint64_t pv = ~std::uint64_t{0}, mv = 0;
    std::size_t score = m;
    for (const T& x : text) {
      std::uint64_t eq = 0;
      for (std::size_t k = 0; k < symbols_.size(); ++k)
        if (detail::same_symbol(*symbols_[k], x)) {
          eq = masks_[k];
          break;
        }
      const std::uint64_t xv = eq | mv;
      const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
      std::uint64_t ph = mv | ~(xh | pv);
      std::uint64_t mh = pv & xh;
      if (ph & last) ++score;
      if (mh & last) --score;
      ph = (ph << 1) | 1;  // the first column grows by one per row
      mh <<= 1;
      pv = mh | ~(xv | ph);
      mv = ph & xv;
    }
    return score;
  }

 private:
  std::size_t rows(std::span<const T> text) const {
    const std::size_t m = pattern_.size();
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= text.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= m; ++j) {
        std::size_t diag = prev[j - 1] + (detail::same_symbol(text[i - 1], pattern_[j - 1]) ? 0 : 1);
        cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
      }
      std::swap(prev, cur);
    }
    return prev[m];
  }

  std::span<const T> pattern_;
  std::vector<const T*> symbols_;
  std::vector<std::uint64_t> masks_;
};

template <class T>
std::size_t levenshtein_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  return LevenshteinPattern<T>(b).distance(a);
}

std::vector<char32_t> code_points(std::string_view s);

// Code-point Levenshtein distance of two tokens.
std::size_t char_distance(std::string_view a, std::string_view b);

// Optimal-string-alignment distance (Levenshtein plus adjacent transposition)
// over code points.
std::size_t damerau_distance(std::string_view a, std::string_view b);

}  // namespace gecx
