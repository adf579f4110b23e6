#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gecx/edits.hpp"
#include "gecx/fscore.hpp"
#include "gecx/sentence.hpp"

namespace gecx {

struct GoldAnnotation {
  TokenSentence source;
  // One sorted, non-overlapping edit set per annotator; annotators 0..n-1.
  std::vector<EditSet> edit_sets;
};

// M2 gold format: "S <tokens>" followed by
// "A <start> <end>|||<type>|||<correction>|||REQUIRED|||-NONE-|||<annotator>"
// lines; blocks separated by blank lines. A (-1, -1) span only registers an
// annotator that proposes no edits. A "-NONE-" correction means deletion.
std::vector<GoldAnnotation> parse_m2(std::istream& in);
std::vector<GoldAnnotation> parse_m2_file(const std::string& path);
void write_m2(std::ostream& out, const std::vector<GoldAnnotation>& gold);

struct M2Options {
  std::size_t max_unchanged = 2;
  double beta = 0.5;
};

struct SentenceCounts {
  EditCounts counts;
  std::size_t annotator = 0;
};

struct EvalReport {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_score = 1.0;
  double beta = 0.5;
  std::vector<SentenceCounts> per_sentence;
};

// For each achievable number of true positives, the fewest system edits
// reaching it. System edit sets are partitions of the base edits into
// groups of candidates from extract_edits.
std::vector<std::pair<long, long>> m2_frontier(const EditCandidates& candidates, const EditSet& gold);

// Chooses the annotator and system edit set maximizing F of running + this
// sentence. Ties: more tp, fewer fp, fewer fn, lower annotator index.
SentenceCounts m2_sentence(const GoldAnnotation& gold, const TokenSentence& hyp, const EditCounts& running,
                           const M2Options& opts);

// Greedy in sentence order against the running corpus counts.
// Throws std::invalid_argument when sizes differ.
EvalReport m2_evaluate(const std::vector<GoldAnnotation>& gold, const Corpus& hyps, const M2Options& opts = {});

// Deterministic choice between two scored options; true when `a` beats `b`.
bool m2_better(const EditCounts& running, const SentenceCounts& a, const SentenceCounts& b, double beta);

// "key=value" lines: tp, fp, fn, precision, recall, f_<beta>.
void write_report_kv(std::ostream& out, const EvalReport& r);
void write_report_text(std::ostream& out, const EvalReport& r);
// sentence<TAB>tp<TAB>fp<TAB>fn<TAB>annotator
void write_report_tsv(std::ostream& out, const EvalReport& r);

}  // namespace gecx
