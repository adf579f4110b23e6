#include "gecx/m2.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "gecx/format.hpp"

namespace gecx {
namespace {

std::vector<std::string> split_fields(const std::string& line, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  return out;
}

long parse_long(const std::string& s, std::size_t lineno) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("M2 line " + std::to_string(lineno) + ": bad integer '" + s + "'");
  }
  return v;
}

void finish_block(std::vector<GoldAnnotation>& out, GoldAnnotation& block, std::map<std::size_t, EditSet>& sets,
                  std::size_t lineno) {
  std::size_t annotators = sets.empty() ? 1 : sets.rbegin()->first + 1;
  block.edit_sets.assign(annotators, EditSet{});
  for (auto& [a, edits] : sets) {
    std::sort(edits.begin(), edits.end());
    if (!is_well_formed(edits, block.source.size())) {
      throw DataError("M2 block ending at line " + std::to_string(lineno) + ": annotator " + std::to_string(a) +
                      " has overlapping or out-of-range edits");
    }
    block.edit_sets[a] = std::move(edits);
  }
  block.source.id = out.size();
  out.push_back(std::move(block));
  block = GoldAnnotation{};
  sets.clear();
}

}  // namespace

std::vector<GoldAnnotation> parse_m2(std::istream& in) {
  std::vector<GoldAnnotation> out;
  GoldAnnotation block;
  std::map<std::size_t, EditSet> sets;
  bool open = false;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (line.empty()) {
      if (open) finish_block(out, block, sets, lineno);
      open = false;
      continue;
    }
    if (line.starts_with("S ") || line == "S") {
      if (open) finish_block(out, block, sets, lineno);
      block.source = parse_tokens(std::string_view(line).substr(1));
      open = true;
      continue;
    }
    if (!line.starts_with("A ")) throw DataError("M2 line " + std::to_string(lineno) + ": expected S or A line");
    if (!open) throw DataError("M2 line " + std::to_string(lineno) + ": A line before S line");
    auto fields = split_fields(line.substr(2), "|||");
    if (fields.size() < 3) throw DataError("M2 line " + std::to_string(lineno) + ": too few fields");
    auto span = split_whitespace(fields[0]);
    if (span.size() != 2) throw DataError("M2 line " + std::to_string(lineno) + ": bad span");
    long start = parse_long(span[0], lineno);
    long end = parse_long(span[1], lineno);
    std::size_t annotator = 0;
    if (fields.size() >= 6) annotator = static_cast<std::size_t>(parse_long(fields[5], lineno));
    auto& set = sets[annotator];
    if (start == -1 && end == -1) continue;
    if (start < 0 || end < start || static_cast<std::size_t>(end) > block.source.size()) {
      throw DataError("M2 line " + std::to_string(lineno) + ": span out of range");
    }
    EditSpan e;
    e.start = static_cast<std::size_t>(start);
    e.end = static_cast<std::size_t>(end);
    e.type_label = fields[1];
    if (fields[2] != "-NONE-") e.correction = split_whitespace(fields[2]);
    if (e.start == e.end && e.correction.empty()) continue;  // empty insertion is a no-op
    set.push_back(std::move(e));
  }
  if (open) finish_block(out, block, sets, lineno);
  return out;
}

std::vector<GoldAnnotation> parse_m2_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return parse_m2(in);
}

void write_m2(std::ostream& out, const std::vector<GoldAnnotation>& gold) {
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (i) out << '\n';
    out << 'S';
    for (const auto& t : gold[i].source.tokens) out << ' ' << t;
    out << '\n';
    for (std::size_t a = 0; a < gold[i].edit_sets.size(); ++a) {
      const auto& set = gold[i].edit_sets[a];
      if (set.empty()) {
        out << "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" << a << '\n';
        continue;
      }
      for (const auto& e : set) {
        out << "A " << e.start << ' ' << e.end << "|||" << (e.type_label.empty() ? "UNK" : e.type_label) << "|||"
            << join(e.correction) << "|||REQUIRED|||-NONE-|||" << a << '\n';
      }
    }
  }
}

std::vector<std::pair<long, long>> m2_frontier(const EditCandidates& candidates, const EditSet& gold) {
  const std::size_t k = candidates.base.size();
  std::map<std::pair<std::size_t, std::size_t>, const EditSpan*> groups;
  for (std::size_t i = 0; i < k; ++i) groups[{i, i}] = &candidates.base[i];
  for (std::size_t m = 0; m < candidates.merged.size(); ++m) groups[candidates.merged_range[m]] = &candidates.merged[m];

  auto in_gold = [&](const EditSpan& e) { return std::find(gold.begin(), gold.end(), e) != gold.end() ? 1L : 0L; };

  // best[j][tp]: fewest edits covering base[0, j) with tp matches.
  constexpr long kNone = std::numeric_limits<long>::max();
  std::vector<std::vector<long>> best(k + 1, std::vector<long>(k + 1, kNone));
  best[0][0] = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      auto it = groups.find({i, j});
      if (it == groups.end()) break;
      long hit = in_gold(*it->second);
      for (std::size_t tp = 0; tp + static_cast<std::size_t>(hit) <= k; ++tp) {
        if (best[i][tp] == kNone) continue;
        long& slot = best[j + 1][tp + static_cast<std::size_t>(hit)];
        slot = std::min(slot, best[i][tp] + 1);
      }
    }
  }
  std::vector<std::pair<long, long>> out;
  for (std::size_t tp = 0; tp <= k; ++tp)
    if (best[k][tp] != kNone) out.emplace_back(static_cast<long>(tp), best[k][tp]);
  return out;
}

bool m2_better(const EditCounts& running, const SentenceCounts& a, const SentenceCounts& b, double beta) {
  double fa = prf(running + a.counts, beta).f;
  double fb = prf(running + b.counts, beta).f;
  if (fa != fb) return fa > fb;
  if (a.counts.tp != b.counts.tp) return a.counts.tp > b.counts.tp;
  if (a.counts.fp != b.counts.fp) return a.counts.fp < b.counts.fp;
  if (a.counts.fn != b.counts.fn) return a.counts.fn < b.counts.fn;
  return a.annotator < b.annotator;
}

SentenceCounts m2_sentence(const GoldAnnotation& gold, const TokenSentence& hyp, const EditCounts& running,
                           const M2Options& opts) {
  auto candidates = extract_edits(align_words(gold.source, hyp), hyp, opts.max_unchanged);
  std::vector<EditSet> sets = gold.edit_sets;
  if (sets.empty()) sets.emplace_back();
  bool have = false;
  SentenceCounts best;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    const long gold_n = static_cast<long>(sets[a].size());
    for (const auto& [tp, edits] : m2_frontier(candidates, sets[a])) {
      SentenceCounts option{{tp, edits - tp, gold_n - tp}, a};
      if (!have || m2_better(running, option, best, opts.beta)) {
        best = option;
        have = true;
      }
    }
  }
  return best;
}

EvalReport m2_evaluate(const std::vector<GoldAnnotation>& gold, const Corpus& hyps, const M2Options& opts) {
  if (gold.size() != hyps.size()) {
    throw std::invalid_argument("gold has " + std::to_string(gold.size()) + " sentences but hypotheses have " +
                                std::to_string(hyps.size()));
  }
  EvalReport r;
  r.beta = opts.beta;
  EditCounts running;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto s = m2_sentence(gold[i], hyps[i], running, opts);
    running += s.counts;
    r.per_sentence.push_back(s);
  }
  r.tp = running.tp;
  r.fp = running.fp;
  r.fn = running.fn;
  auto p = prf(running, opts.beta);
  r.precision = p.precision;
  r.recall = p.recall;
  r.f_score = p.f;
  return r;
}

void write_report_kv(std::ostream& out, const EvalReport& r) {
  out << "tp=" << r.tp << '\n'
      << "fp=" << r.fp << '\n'
      << "fn=" << r.fn << '\n'
      << "precision=" << format_number(r.precision) << '\n'
      << "recall=" << format_number(r.recall) << '\n'
      << "f_" << format_number(r.beta) << '=' << format_number(r.f_score) << '\n';
}

void write_report_text(std::ostream& out, const EvalReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "Precision   : %.4f\nRecall      : %.4f\nF_%-10s: %.4f\n", r.precision, r.recall,
                format_number(r.beta).c_str(), r.f_score);
  out << buf;
}

void write_report_tsv(std::ostream& out, const EvalReport& r) {
  out << "sentence\ttp\tfp\tfn\tannotator\n";
  for (std::size_t i = 0; i < r.per_sentence.size(); ++i) {
    const auto& s = r.per_sentence[i];
    out << i << '\t' << s.counts.tp << '\t' << s.counts.fp << '\t' << s.counts.fn << '\t' << s.annotator << '\n';
  }
}

}  // namespace gecx
