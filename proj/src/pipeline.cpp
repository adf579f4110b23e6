#include "gecx/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gecx/parallel.hpp"

namespace gecx {

using nlohmann::json;

std::string to_string(StageKind k) {
  switch (k) {
    case StageKind::kCorrector:
      return "corrector";
    case StageKind::kRescore:
      return "rescore";
    case StageKind::kSpellcheck:
      return "spellcheck";
  }
  return "?";
}

PipelineStage PipelineStage::make_corrector(std::shared_ptr<const Corrector> c, std::string label) {
  PipelineStage s;
  s.kind = StageKind::kCorrector;
  s.label = std::move(label);
  s.corrector = std::move(c);
  return s;
}

PipelineStage PipelineStage::make_rescore(std::vector<std::shared_ptr<const FeatureFunction>> annotators,
                                          LinearModel model, std::string label) {
  PipelineStage s;
  s.kind = StageKind::kRescore;
  s.label = std::move(label);
  s.annotators = std::move(annotators);
  s.model = std::move(model);
  return s;
}

PipelineStage PipelineStage::make_spellcheck(std::shared_ptr<const SpellChecker> sp, std::string label) {
  PipelineStage s;
  s.kind = StageKind::kSpellcheck;
  s.label = std::move(label);
  s.spell = std::move(sp);
  return s;
}

namespace {

namespace fs = std::filesystem;

struct StageReader {
  const json& node;
  std::string base;
  std::size_t index;

  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError("config stage " + std::to_string(index) + ": " + msg);
  }
  bool has(const char* key) const { return node.contains(key); }
  std::string str(const char* key) const {
    if (!node.contains(key) || !node[key].is_string()) fail(std::string("missing string key '") + key + "'");
    return node[key].get<std::string>();
  }
  std::string path(const char* key) const {
    fs::path p(str(key));
    return p.is_absolute() ? p.string() : (fs::path(base) / p).string();
  }
  double num(const char* key, double fallback) const {
    if (!node.contains(key)) return fallback;
    if (!node[key].is_number()) fail(std::string("key '") + key + "' must be a number");
    return node[key].get<double>();
  }
};

std::shared_ptr<const WordClassMap> load_classes(const std::string& path) {
  return std::make_shared<const WordClassMap>(WordClassMap::load_file(path));
}

std::shared_ptr<const FeatureFunction> parse_annotator(const json& a, const StageReader& stage) {
  if (!a.is_object()) stage.fail("annotator must be an object");
  StageReader r{a, stage.base, stage.index};
  auto type = r.str("type");
  if (type == "dense_edit") return std::make_shared<DenseEditFeatures>();
  if (type == "sparse_pattern") {
    auto classes = r.has("classes_path") ? load_classes(r.path("classes_path")) : std::make_shared<WordClassMap>();
    return std::make_shared<SparsePatternFeatures>(classes);
  }
  if (type == "lm") {
    auto model = std::make_shared<const NGramModel>(NGramModel::load_arpa_file(r.path("arpa_path")));
    std::string name = r.has("name") ? r.str("name") : "LM";
    bool normalized = a.value("normalized", false);
    std::shared_ptr<const WordClassMap> classes;
    if (r.has("classes_path")) classes = load_classes(r.path("classes_path"));
    return std::make_shared<LmFeature>(name, model, normalized, classes);
  }
  stage.fail("unknown annotator type '" + type + "'");
}

LinearModel parse_weights(const StageReader& r) {
  if (r.has("weights_path")) return LinearModel::load_file(r.path("weights_path"));
  if (r.has("weights")) {
    const auto& w = r.node["weights"];
    if (!w.is_object()) r.fail("'weights' must be an object");
    LinearModel m;
    for (auto it = w.begin(); it != w.end(); ++it) {
      if (!it.value().is_number()) r.fail("weight '" + it.key() + "' must be a number");
      m.set(it.key(), it.value().get<double>());
    }
    return m;
  }
  r.fail("rescore stage needs 'weights_path' or 'weights'");
}

std::shared_ptr<const SpellChecker> parse_spell(const StageReader& r) {
  auto lexicon = std::make_shared<const Lexicon>(Lexicon::load_file(r.path("lexicon_path")));
  auto bpe = std::make_shared<const BpeModel>(BpeModel::load_file(r.path("bpe_path")));

  std::shared_ptr<const NGramModel> char_lm;
  if (r.has("char_lm_path")) {
    char_lm = std::make_shared<const NGramModel>(NGramModel::load_arpa_file(r.path("char_lm_path")));
  } else {
    int order = static_cast<int>(r.num("char_lm_order", 4));
    char_lm = std::make_shared<const NGramModel>(NGramModel::train(lexicon_char_corpus(*lexicon), order));
  }

  std::shared_ptr<const NGramModel> word_lm;
  if (r.has("word_lm_path")) {
    word_lm = std::make_shared<const NGramModel>(NGramModel::load_arpa_file(r.path("word_lm_path")));
  } else if (r.has("word_lm_train_path")) {
    int order = static_cast<int>(r.num("word_lm_order", 3));
    word_lm = std::make_shared<const NGramModel>(NGramModel::train(read_corpus_file(r.path("word_lm_train_path")), order));
  } else {
    r.fail("spellcheck stage needs 'word_lm_path' or 'word_lm_train_path'");
  }

  SpellOptions opts;
  opts.lambda_char = r.num("lambda_char", opts.lambda_char);
  opts.lambda_lm = r.num("lambda_lm", opts.lambda_lm);
  opts.tau = r.num("tau", opts.tau);
  opts.max_distance = static_cast<std::size_t>(r.num("max_distance", static_cast<double>(opts.max_distance)));
  opts.max_candidates = static_cast<std::size_t>(r.num("max_candidates", static_cast<double>(opts.max_candidates)));
  return std::make_shared<const SpellChecker>(lexicon, bpe, char_lm, word_lm, opts);
}

PipelineStage parse_stage(const json& node, const std::string& base, std::size_t index) {
  if (!node.is_object()) throw DataError("config stage " + std::to_string(index) + ": must be an object");
  StageReader r{node, base, index};
  auto kind = r.str("kind");
  std::string label = r.has("label") ? r.str("label") : kind;
  if (kind == "corrector") {
    std::shared_ptr<const Corrector> c;
    if (r.has("nbest_path"))
      c = std::make_shared<FileCorrector>(FileCorrector::from_file(r.path("nbest_path")));
    else if (r.has("rules_path"))
      c = std::make_shared<RuleCorrector>(RuleCorrector::load_file(r.path("rules_path")));
    else if (node.value("identity", false))
      c = std::make_shared<IdentityCorrector>();
    else
      r.fail("corrector stage needs 'nbest_path', 'rules_path' or \"identity\": true");
    return PipelineStage::make_corrector(c, label);
  }
  if (kind == "rescore") {
    std::vector<std::shared_ptr<const FeatureFunction>> annotators;
    if (r.has("annotators")) {
      if (!node["annotators"].is_array()) r.fail("'annotators' must be an array");
      for (const auto& a : node["annotators"]) annotators.push_back(parse_annotator(a, r));
    }
    auto stage = PipelineStage::make_rescore(std::move(annotators), parse_weights(r), label);
    if (r.has("ensemble")) {
      const auto& e = node["ensemble"];
      EnsembleSpec spec;
      try {
        spec.features = e.at("features").get<std::vector<std::string>>();
        spec.weights = e.at("weights").get<std::vector<double>>();
      } catch (const json::exception&) {
        r.fail("'ensemble' needs 'features' (strings) and 'weights' (numbers)");
      }
      if (spec.features.size() != spec.weights.size()) r.fail("ensemble features and weights differ in length");
      stage.ensemble = std::move(spec);
    }
    return stage;
  }
  if (kind == "spellcheck") return PipelineStage::make_spellcheck(parse_spell(r), label);
  r.fail("unknown stage kind '" + kind + "'");
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("pipeline config: ") + e.what());
  }
  if (!root.is_object() || !root.contains("stages") || !root["stages"].is_array())
    throw DataError("pipeline config: expected an object with a 'stages' array");
  PipelineConfig cfg;
  for (std::size_t i = 0; i < root["stages"].size(); ++i) {
    try {
      cfg.stages.push_back(parse_stage(root["stages"][i], base_dir, i));
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      throw DataError("config stage " + std::to_string(i) + ": " + e.what());
    }
  }
  if (cfg.stages.empty()) throw DataError("pipeline config: no stages");
  return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto base = std::filesystem::path(path).parent_path().string();
  return parse_pipeline_config(ss.str(), base.empty() ? "." : base);
}

namespace {

NBestList single(std::size_t id, TokenSentence s) {
  NBestList l;
  l.sentence_id = id;
  l.hypotheses.push_back(Hypothesis{std::move(s), {}, 0.0});
  return l;
}

}  // namespace

PipelineResult pipeline_run(const PipelineConfig& cfg, const Corpus& corpus, std::size_t jobs) {
  if (cfg.stages.empty()) throw DataError("pipeline has no stages");
  const std::size_t n = corpus.size();
  Corpus inputs = corpus;  // what the current n-bests were produced from
  std::vector<NBestList> nbests(n);
  for (std::size_t i = 0; i < n; ++i) nbests[i] = single(i, corpus[i]);

  PipelineResult result;
  for (std::size_t k = 0; k < cfg.stages.size(); ++k) {
    const auto& stage = cfg.stages[k];
    try {
      Corpus current(n);
      for (std::size_t i = 0; i < n; ++i) current[i] = nbests[i].hypotheses.front().tokens;

      switch (stage.kind) {
        case StageKind::kCorrector: {
          if (!stage.corrector) throw DataError("corrector stage without a corrector");
          std::vector<NBestList> next(n);
          parallel_for(n, jobs, [&](std::size_t i) {
            next[i] = stage.corrector->correct(i, current[i]);
            next[i].sentence_id = i;
            if (next[i].hypotheses.empty()) throw DataError("corrector returned no hypothesis");
          });
          inputs = std::move(current);
          nbests = std::move(next);
          break;
        }
        case StageKind::kRescore: {
          annotate_features(nbests, inputs, stage.annotators, jobs);
          if (stage.ensemble) combine_ensemble_features(nbests, stage.ensemble->features, stage.ensemble->weights);
          for (auto& l : nbests) l = rerank(l, stage.model);
          break;
        }
        case StageKind::kSpellcheck: {
          if (!stage.spell) throw DataError("spellcheck stage without a spell-checker");
          auto fixed = stage.spell->correct_corpus(current, jobs);
          for (std::size_t i = 0; i < n; ++i) nbests[i] = single(i, std::move(fixed[i]));
          inputs = std::move(current);
          break;
        }
      }
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError(k, e.what());
    }
    Corpus trace(n);
    for (std::size_t i = 0; i < n; ++i) {
      trace[i] = nbests[i].hypotheses.front().tokens;
      trace[i].id = corpus[i].id;
    }
    result.traces.push_back(std::move(trace));
  }
  result.output = result.traces.back();
  result.final_nbests = std::move(nbests);
  return result;
}

}  // namespace gecx
