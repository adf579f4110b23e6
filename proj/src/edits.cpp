#include "gecx/edits.hpp"

#include <stdexcept>

namespace gecx {
namespace {

struct Run {
  std::size_t src_begin, src_end;
  std::size_t hyp_begin, hyp_end;
};

EditSpan make_span(const Run& r, const TokenSentence& hyp) {
  EditSpan e;
  e.start = r.src_begin;
  e.end = r.src_end;
  e.correction.assign(hyp.tokens.begin() + static_cast<std::ptrdiff_t>(r.hyp_begin),
                      hyp.tokens.begin() + static_cast<std::ptrdiff_t>(r.hyp_end));
  return e;
}

}  // namespace

EditSet EditCandidates::all() const {
  EditSet out = base;
  out.insert(out.end(), merged.begin(), merged.end());
  return out;
}

EditCandidates extract_edits(const Alignment& ops, const TokenSentence& hyp, std::size_t max_unchanged) {
  std::vector<Run> runs;
  std::vector<std::size_t> gaps;
  std::size_t src_pos = 0, hyp_pos = 0, matches_since = 0;
  bool in_run = false;
  for (const auto& op : ops) {
    if (op.kind == OpKind::kMatch) {
      in_run = false;
      ++src_pos, ++hyp_pos, ++matches_since;
      continue;
    }
    if (!in_run) {
      if (!runs.empty()) gaps.push_back(matches_since);
      runs.push_back({src_pos, src_pos, hyp_pos, hyp_pos});
      in_run = true;
    }
    if (op.kind != OpKind::kInsert) ++src_pos;
    if (op.kind != OpKind::kDelete) ++hyp_pos;
    runs.back().src_end = src_pos;
    runs.back().hyp_end = hyp_pos;
    matches_since = 0;
  }

  EditCandidates out;
  out.gaps = gaps;
  for (const auto& r : runs) out.base.push_back(make_span(r, hyp));
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size() && gaps[j - 1] <= max_unchanged; ++j) {
      out.merged.push_back(make_span({runs[i].src_begin, runs[j].src_end, runs[i].hyp_begin, runs[j].hyp_end}, hyp));
      out.merged_range.emplace_back(i, j);
    }
  }
  return out;
}

bool is_well_formed(const EditSet& edits, std::size_t source_length) {
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const auto& e = edits[i];
    if (e.start > e.end || e.end > source_length) return false;
    if (i == 0) continue;
    const auto& prev = edits[i - 1];
    if (prev.end > e.start) return false;
    if (prev.start == prev.end && e.start == e.end && prev.start == e.start) return false;
  }
  return true;
}

TokenSentence apply_edits(const TokenSentence& src, const EditSet& edits) {
  if (!is_well_formed(edits, src.size())) throw std::invalid_argument("edit set is not sorted and non-overlapping");
  TokenSentence out;
  out.id = src.id;
  std::size_t pos = 0;
  for (const auto& e : edits) {
    for (; pos < e.start; ++pos) out.tokens.push_back(src.tokens[pos]);
    out.tokens.insert(out.tokens.end(), e.correction.begin(), e.correction.end());
    pos = e.end;
  }
  for (; pos < src.size(); ++pos) out.tokens.push_back(src.tokens[pos]);
  return out;
}

}  // namespace gecx
