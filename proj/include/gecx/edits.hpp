#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gecx/alignment.hpp"
#include "gecx/sentence.hpp"

namespace gecx {

// Replacement of source tokens [start, end) by `correction`.
// start == end is an insertion, an empty correction a deletion.
struct EditSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> correction;
  std::string type_label;

  // Span and correction only; the type label never takes part in matching.
  friend bool operator==(const EditSpan& a, const EditSpan& b) {
    return a.start == b.start && a.end == b.end && a.correction == b.correction;
  }
  friend bool operator<(const EditSpan& a, const EditSpan& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    return a.correction < b.correction;
  }
};

using EditSet = std::vector<EditSpan>;

struct EditCandidates {
  // Maximal runs of non-match ops, in source order. Applied together they
  // turn the source into the hypothesis.
  EditSet base;
  // gaps[i]: number of match ops between base[i] and base[i + 1].
  std::vector<std::size_t> gaps;
  // Unions of consecutive base spans bridging at most max_unchanged matches
  // per gap, ordered by (first base index, last base index).
  EditSet merged;
  // merged_range[k]: inclusive (first, last) base indices covered by merged[k].
  std::vector<std::pair<std::size_t, std::size_t>> merged_range;

  EditSet all() const;
};

EditCandidates extract_edits(const Alignment& ops, const TokenSentence& hyp, std::size_t max_unchanged);

// Edits must be sorted and non-overlapping; throws std::invalid_argument otherwise.
TokenSentence apply_edits(const TokenSentence& src, const EditSet& edits);

// True when the set is sorted by start and no two spans overlap
// (two insertions at one position count as overlapping).
bool is_well_formed(const EditSet& edits, std::size_t source_length);

}  // namespace gecx
