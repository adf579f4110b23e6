#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gecx/annotate.hpp"
#include "gecx/corrector.hpp"
#include "gecx/nbest.hpp"
#include "gecx/spell.hpp"

namespace gecx {

enum class StageKind { kCorrector, kRescore, kSpellcheck };
std::string to_string(StageKind k);

// Optional ensemble combination applied before rescoring: feature "ens" from
// named feature columns.
struct EnsembleSpec {
  std::vector<std::string> features;
  std::vector<double> weights;
};

struct PipelineStage {
  StageKind kind = StageKind::kCorrector;
  std::string label;

  std::shared_ptr<const Corrector> corrector;                      // kCorrector
  std::vector<std::shared_ptr<const FeatureFunction>> annotators;  // kRescore
  LinearModel model;                                               // kRescore
  std::optional<EnsembleSpec> ensemble;                            // kRescore
  std::shared_ptr<const SpellChecker> spell;                       // kSpellcheck

  static PipelineStage make_corrector(std::shared_ptr<const Corrector> c, std::string label = "corrector");
  static PipelineStage make_rescore(std::vector<std::shared_ptr<const FeatureFunction>> annotators,
                                    LinearModel model, std::string label = "rescore");
  static PipelineStage make_spellcheck(std::shared_ptr<const SpellChecker> s, std::string label = "spellcheck");
};

struct PipelineConfig {
  std::vector<PipelineStage> stages;
};

// JSON: {"stages": [{"kind": "corrector" | "rescore" | "spellcheck", ...}]}.
// Relative paths resolve against base_dir. Throws DataError on anything
// malformed or unresolvable.
PipelineConfig parse_pipeline_config(const std::string& json_text, const std::string& base_dir);
PipelineConfig load_pipeline_config(const std::string& path);

struct PipelineResult {
  Corpus output;
  std::vector<Corpus> traces;  // traces[stage][sentence]: that stage's 1-best
  std::vector<NBestList> final_nbests;
};

// Stage failure carries the stage index.
class PipelineError : public DataError {
 public:
  PipelineError(std::size_t stage, const std::string& what)
      : DataError("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

// Folds the stages left to right. Corrector and spellcheck stages read the
// previous 1-best (initially the input corpus); a rescore stage re-ranks the
// current n-best lists, computing features against the input those lists
// were produced from. Sentence ids are corpus positions.
PipelineResult pipeline_run(const PipelineConfig& cfg, const Corpus& corpus, std::size_t jobs = 1);

}  // namespace gecx
