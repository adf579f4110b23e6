// gecx: command-line front end for the GEC toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "gecx/annotate.hpp"
#include "gecx/bpe.hpp"
#include "gecx/corpus_metric.hpp"
#include "gecx/format.hpp"
#include "gecx/gleu.hpp"
#include "gecx/human.hpp"
#include "gecx/m2.hpp"
#include "gecx/nbest.hpp"
#include "gecx/ngram_model.hpp"
#include "gecx/pipeline.hpp"
#include "gecx/spell.hpp"
#include "gecx/tokenizer.hpp"
#include "gecx/truecaser.hpp"
#include "gecx/tuning.hpp"
#include "gecx/word_classes.hpp"

#ifndef GECX_VERSION
#define GECX_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gecx;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  char two[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(two, sizeof two, "%02x", md[i]);
    hex += two;
  }
  return hex;
}

struct Ctx {
  std::uint64_t seed = 42;
  std::size_t jobs = 1;
};

// One runnable leaf command.
struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<std::string> input_options;  // option names whose values are input files
  std::function<void(const Ctx&)> run;
  std::string* out = nullptr;              // primary output path, if any
};

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  fn(out);
  if (!out) throw DataError("write failed: " + path);
}

Corpus read_corpus_arg(const std::string& path) {
  if (path.empty() || path == "-") return read_corpus(std::cin);
  return read_corpus_file(path);
}

std::vector<std::string> read_lines_arg(const std::string& path) {
  if (path.empty() || path == "-") return read_lines(std::cin);
  return read_lines_file(path);
}

std::vector<NBestList> read_nbest_arg(const std::string& path) {
  if (path.empty() || path == "-") return parse_nbest(std::cin);
  return parse_nbest_file(path);
}

std::pair<std::string, std::string> split_named(const std::string& spec, const char* what) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
    throw UsageError(std::string(what) + " expects NAME=PATH, got '" + spec + "'");
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

std::vector<std::vector<TokenSentence>> load_references(const std::vector<std::string>& paths) {
  std::vector<Corpus> by_annotator;
  for (const auto& p : paths) by_annotator.push_back(read_corpus_file(p));
  return transpose_references(by_annotator);
}

// Options shared by the tuning commands.
struct MetricArgs {
  std::string metric = "m2";
  std::string gold;
  std::string src;
  std::vector<std::string> refs;
  double beta = 0.5;
  std::size_t max_unchanged = 2;
  int max_n = 4;

  void add(CLI::App* app) {
    app->add_option("--metric", metric, "m2 or gleu")->check(CLI::IsMember({"m2", "gleu"}))->capture_default_str();
    app->add_option("--gold", gold, "M2 gold file (metric m2)");
    app->add_option("--src", src, "source corpus (metric gleu)");
    app->add_option("--ref", refs, "reference corpus, repeatable (metric gleu)");
    app->add_option("--beta", beta, "F-score beta (metric m2)")->capture_default_str();
    app->add_option("--max-unchanged", max_unchanged, "edit merge window (metric m2)")->capture_default_str();
    app->add_option("--max-n", max_n, "GLEU n-gram order")->capture_default_str();
  }

  std::unique_ptr<CorpusMetric> build() const {
    if (metric == "m2") {
      if (gold.empty()) throw UsageError("--metric m2 needs --gold");
      return std::make_unique<M2Metric>(parse_m2_file(gold), M2Options{max_unchanged, beta});
    }
    if (src.empty() || refs.empty()) throw UsageError("--metric gleu needs --src and at least one --ref");
    return std::make_unique<GleuMetric>(read_corpus_file(src), load_references(refs), max_n);
  }
};

void write_history(std::ostream& out, const TuneResult& r) {
  for (std::size_t i = 0; i < r.history.size(); ++i) out << "iteration " << i << " score " << format_number(r.history[i]) << '\n';
  out << "final score " << format_number(r.score) << '\n';
}

json resolved_config(const CLI::App* leaf) {
  json cfg = json::object();
  for (const CLI::App* a = leaf; a; a = a->get_parent()) {
    for (const CLI::Option* opt : a->get_options()) {
      std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "-h") continue;
      while (!name.empty() && name.front() == '-') name.erase(0, 1);
      if (cfg.contains(name)) continue;
      const auto& res = opt->results();
      if (!res.empty()) {
        cfg[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (!opt->get_default_str().empty()) {
        cfg[name] = opt->get_default_str();
      }
    }
  }
  return cfg;
}

std::string command_path(const CLI::App* leaf) {
  std::vector<std::string> parts;
  for (const CLI::App* a = leaf; a && a->get_parent(); a = a->get_parent()) parts.insert(parts.begin(), a->get_name());
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

json input_digests(const Command& cmd) {
  json out = json::object();
  for (const auto& name : cmd.input_options) {
    const CLI::Option* opt = cmd.app->get_option_no_throw(name);
    if (!opt) continue;
    for (const auto& path : opt->results()) {
      if (path.empty() || path == "-") continue;
      out[path] = "sha256:" + sha256_file(path);
    }
  }
  return out;
}

void write_manifest(const Command& cmd, const Ctx& ctx, double seconds, int exit_code) {
  json m;
  m["command"] = command_path(cmd.app);
  m["config"] = resolved_config(cmd.app);
  try {
    m["inputs"] = input_digests(cmd);
  } catch (const DataError&) {
    if (exit_code == 0) throw;
    m["inputs"] = nullptr;  // an input was unreadable, which is why the run failed
  }
  m["seed"] = ctx.seed;
  m["version"] = GECX_VERSION;
  m["duration_seconds"] = seconds;
  m["exit_code"] = exit_code;
  std::string path = (cmd.out && !cmd.out->empty() && *cmd.out != "-") ? *cmd.out + ".manifest.json"
                                                                        : "gecx-run.manifest.json";
  std::ofstream f(path);
  if (!f) throw DataError("cannot write manifest " + path);
  f << m.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammatical error correction toolkit", "gecx"};
  app.require_subcommand(1);
  app.fallthrough();
  Ctx ctx;
  app.add_option("--seed", ctx.seed, "random seed for every stochastic step")
      ->envname("GECX_SEED")
      ->capture_default_str();
  app.add_option("--jobs", ctx.jobs, "per-sentence worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.set_version_flag("--version", GECX_VERSION);

  std::vector<Command> commands;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) -> Command& {
    Command& c = commands.emplace_back();
    c.name = name;
    c.app = parent->add_subcommand(name, desc);
    return c;
  };
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };

  // tokenize
  std::string tok_in, tok_out;
  {
    auto& c = leaf(&app, "tokenize", "rule-based tokenization of raw text lines");
    c.app->add_option("--in", tok_in, "raw text (default stdin)");
    c.app->add_option("--out", tok_out, "tokenized text (default stdout)");
    c.input_options = {"--in"};
    c.out = &tok_out;
    c.run = [&](const Ctx&) {
      auto lines = read_lines_arg(tok_in);
      with_output(tok_out, [&](std::ostream& o) {
        for (const auto& l : lines) o << join(tokenize(l)) << '\n';
      });
    };
  }

  // truecase
  std::string tc_in, tc_model, tc_out;
  {
    auto* g = group("truecase", "truecasing model");
    auto& t = leaf(g, "train", "count surface forms of non-initial tokens");
    t.app->add_option("--in", tc_in, "tokenized training text")->required();
    t.app->add_option("--model", tc_model, "model output")->required();
    t.input_options = {"--in"};
    t.out = &tc_model;
    t.run = [&](const Ctx&) {
      auto model = TruecaseModel::train(read_corpus_arg(tc_in));
      with_output(tc_model, [&](std::ostream& o) { model.save(o); });
    };
    auto& a = leaf(g, "apply", "restore the casing of sentence-initial tokens");
    a.app->add_option("--model", tc_model, "truecasing model")->required();
    a.app->add_option("--in", tc_in, "tokenized text (default stdin)");
    a.app->add_option("--out", tc_out, "output (default stdout)");
    a.input_options = {"--model", "--in"};
    a.out = &tc_out;
    a.run = [&](const Ctx&) {
      auto model = TruecaseModel::load_file(tc_model);
      auto corpus = read_corpus_arg(tc_in);
      with_output(tc_out, [&](std::ostream& o) {
        for (const auto& s : corpus) o << join(model.apply(s)) << '\n';
      });
    };
  }

  // bpe
  std::string bpe_in, bpe_codes, bpe_out;
  std::size_t bpe_merges = 1000;
  bool bpe_reverse = false;
  {
    auto* g = group("bpe", "byte-pair encoding");
    auto& l = leaf(g, "learn", "learn a merge table");
    l.app->add_option("--in", bpe_in, "tokenized training text")->required();
    l.app->add_option("--merges", bpe_merges, "maximum number of merges")->capture_default_str();
    l.app->add_option("--out", bpe_codes, "merge table output (default stdout)");
    l.input_options = {"--in"};
    l.out = &bpe_codes;
    l.run = [&](const Ctx&) {
      auto model = BpeModel::learn(read_corpus_arg(bpe_in), bpe_merges);
      with_output(bpe_codes, [&](std::ostream& o) { model.save(o); });
    };
    auto& a = leaf(g, "apply", "segment text into subword units");
    a.app->add_option("--codes", bpe_codes, "merge table")->required();
    a.app->add_option("--in", bpe_in, "tokenized text (default stdin)");
    a.app->add_option("--out", bpe_out, "output (default stdout)");
    a.app->add_flag("--reverse", bpe_reverse, "join units back into tokens instead");
    a.input_options = {"--codes", "--in"};
    a.out = &bpe_out;
    a.run = [&](const Ctx&) {
      auto model = BpeModel::load_file(bpe_codes);
      auto corpus = read_corpus_arg(bpe_in);
      with_output(bpe_out, [&](std::ostream& o) {
        for (const auto& s : corpus) o << join(bpe_reverse ? BpeModel::unapply(s) : model.apply(s)) << '\n';
      });
    };
  }

  // lm
  std::string lm_in, lm_model, lm_out, lm_classes;
  int lm_order = 3;
  double lm_discount = 0.75;
  {
    auto* g = group("lm", "n-gram language models");
    auto classes = [&]() -> std::optional<WordClassMap> {
      if (lm_classes.empty()) return std::nullopt;
      return WordClassMap::load_file(lm_classes);
    };
    auto project = [](Corpus c, const std::optional<WordClassMap>& cls) {
      return cls ? project_to_classes(c, *cls) : c;
    };
    auto& t = leaf(g, "train", "train an interpolated Kneser-Ney model");
    t.app->add_option("--in", lm_in, "tokenized training text")->required();
    t.app->add_option("--order", lm_order, "n-gram order")->capture_default_str();
    t.app->add_option("--discount", lm_discount, "absolute discount")->capture_default_str();
    t.app->add_option("--classes", lm_classes, "word-class map; trains a class LM");
    t.app->add_option("--out", lm_out, "ARPA output (default stdout)");
    t.input_options = {"--in", "--classes"};
    t.out = &lm_out;
    t.run = [&, classes, project](const Ctx&) {
      auto model = NGramModel::train(project(read_corpus_arg(lm_in), classes()), lm_order, lm_discount);
      with_output(lm_out, [&](std::ostream& o) { model.save_arpa(o); });
    };
    auto& s = leaf(g, "score", "per-sentence log-probabilities");
    s.app->add_option("--model", lm_model, "ARPA model")->required();
    s.app->add_option("--in", lm_in, "tokenized text (default stdin)");
    s.app->add_option("--classes", lm_classes, "word-class map for a class LM");
    s.app->add_option("--out", lm_out, "TSV output (default stdout)");
    s.input_options = {"--model", "--in", "--classes"};
    s.out = &lm_out;
    s.run = [&, classes, project](const Ctx&) {
      auto model = NGramModel::load_arpa_file(lm_model);
      auto corpus = project(read_corpus_arg(lm_in), classes());
      with_output(lm_out, [&](std::ostream& o) {
        o << "sentence\tlogprob\tn_scored\tnormalized\n";
        for (std::size_t i = 0; i < corpus.size(); ++i) {
          auto sc = model.score(corpus[i]);
          o << i << '\t' << format_number(sc.logprob) << '\t' << sc.n_scored << '\t' << format_number(sc.normalized)
            << '\n';
        }
      });
    };
    auto& p = leaf(g, "ppl", "corpus perplexity");
    p.app->add_option("--model", lm_model, "ARPA model")->required();
    p.app->add_option("--in", lm_in, "tokenized text (default stdin)");
    p.app->add_option("--classes", lm_classes, "word-class map for a class LM");
    p.input_options = {"--model", "--in", "--classes"};
    p.run = [&, classes, project](const Ctx&) {
      auto model = NGramModel::load_arpa_file(lm_model);
      std::cout << "perplexity=" << format_number(model.perplexity(project(read_corpus_arg(lm_in), classes())))
                << '\n';
    };
  }

  // m2
  std::string m2_gold, m2_hyp, m2_report, m2_tsv;
  M2Options m2_opts;
  {
    auto* g = group("m2", "MaxMatch evaluation");
    auto& s = leaf(g, "score", "precision, recall and F-beta of edits against M2 gold");
    s.app->add_option("--gold", m2_gold, "M2 gold file")->required();
    s.app->add_option("--hyp", m2_hyp, "tokenized system output")->required();
    s.app->add_option("--beta", m2_opts.beta, "F-score beta")->capture_default_str();
    s.app->add_option("--max-unchanged", m2_opts.max_unchanged, "edit merge window")->capture_default_str();
    s.app->add_option("--report", m2_report, "key=value report file");
    s.app->add_option("--per-sentence", m2_tsv, "per-sentence TSV file");
    s.input_options = {"--gold", "--hyp"};
    s.out = &m2_report;
    s.run = [&](const Ctx&) {
      auto report = m2_evaluate(parse_m2_file(m2_gold), read_corpus_file(m2_hyp), m2_opts);
      write_report_text(std::cout, report);
      if (!m2_report.empty()) with_output(m2_report, [&](std::ostream& o) { write_report_kv(o, report); });
      if (!m2_tsv.empty()) with_output(m2_tsv, [&](std::ostream& o) { write_report_tsv(o, report); });
    };
  }

  // gleu
  std::string gl_src, gl_hyp, gl_report;
  std::vector<std::string> gl_refs;
  GleuConfig gl_cfg;
  {
    auto* g = group("gleu", "GLEU evaluation");
    auto& s = leaf(g, "score", "corpus GLEU against one or more references");
    s.app->add_option("--src", gl_src, "source corpus")->required();
    s.app->add_option("--ref", gl_refs, "reference corpus, repeatable")->required();
    s.app->add_option("--hyp", gl_hyp, "system output")->required();
    s.app->add_option("--max-n", gl_cfg.max_n, "n-gram order")->capture_default_str();
    s.app->add_option("--iterations", gl_cfg.iterations, "reference sampling rounds")->capture_default_str();
    s.app->add_option("--report", gl_report, "key=value report file");
    s.input_options = {"--src", "--ref", "--hyp"};
    s.out = &gl_report;
    s.run = [&](const Ctx& c) {
      GleuConfig cfg = gl_cfg;
      cfg.seed = c.seed;
      double score = gleu_evaluate(read_corpus_file(gl_src), load_references(gl_refs), read_corpus_file(gl_hyp), cfg);
      char buf[64];
      std::snprintf(buf, sizeof buf, "GLEU        : %.4f\n", score);
      std::cout << buf;
      if (!gl_report.empty())
        with_output(gl_report, [&](std::ostream& o) {
          o << "gleu=" << format_number(score) << "\nreferences=" << gl_refs.size() << "\nseed=" << cfg.seed << '\n';
        });
    };
  }

  // nbest
  std::string nb_in, nb_src, nb_out, nb_weights, nb_classes, nb_nbest_out;
  bool nb_dense = false, nb_sparse = false;
  std::vector<std::string> nb_lms, nb_lms_norm, nb_wclms;
  {
    auto* g = group("nbest", "n-best lists");
    auto& a = leaf(g, "annotate", "add feature scores to every hypothesis");
    a.app->add_option("--in", nb_in, "n-best file")->required();
    a.app->add_option("--src", nb_src, "source corpus indexed by sentence id")->required();
    a.app->add_option("--out", nb_out, "annotated n-best (default stdout)");
    a.app->add_flag("--dense", nb_dense, "dense edit features");
    a.app->add_flag("--sparse", nb_sparse, "sparse edit-pattern features");
    a.app->add_option("--classes", nb_classes, "word-class map for --sparse contexts and --wclm");
    a.app->add_option("--lm", nb_lms, "NAME=ARPA: negative log-probability feature, repeatable");
    a.app->add_option("--lm-normalized", nb_lms_norm, "NAME=ARPA: per-token variant, repeatable");
    a.app->add_option("--wclm", nb_wclms, "NAME=ARPA: word-class LM over --classes, repeatable");
    a.input_options = {"--in", "--src", "--classes"};
    a.out = &nb_out;
    a.run = [&](const Ctx& c) {
      std::shared_ptr<const WordClassMap> classes;
      if (!nb_classes.empty()) classes = std::make_shared<const WordClassMap>(WordClassMap::load_file(nb_classes));
      std::vector<std::shared_ptr<const FeatureFunction>> fns;
      if (nb_dense) fns.push_back(std::make_shared<DenseEditFeatures>());
      if (nb_sparse)
        fns.push_back(std::make_shared<SparsePatternFeatures>(classes ? classes : std::make_shared<WordClassMap>()));
      auto add_lms = [&](const std::vector<std::string>& specs, bool normalized, bool use_classes) {
        for (const auto& spec : specs) {
          auto [name, path] = split_named(spec, "LM option");
          if (use_classes && !classes) throw UsageError("--wclm needs --classes");
          auto model = std::make_shared<const NGramModel>(NGramModel::load_arpa_file(path));
          fns.push_back(std::make_shared<LmFeature>(name, model, normalized, use_classes ? classes : nullptr));
        }
      };
      add_lms(nb_lms, false, false);
      add_lms(nb_lms_norm, true, false);
      add_lms(nb_wclms, false, true);
      if (fns.empty()) throw UsageError("no annotator selected");
      auto lists = read_nbest_arg(nb_in);
      annotate_features(lists, read_corpus_file(nb_src), fns, c.jobs);
      with_output(nb_out, [&](std::ostream& o) { write_nbest(o, lists); });
    };
    auto& r = leaf(g, "rescore", "pick the best hypothesis under a linear model");
    r.app->add_option("--in", nb_in, "n-best file")->required();
    r.app->add_option("--weights", nb_weights, "weights file")->required();
    r.app->add_option("--out", nb_out, "1-best corpus (default stdout)");
    r.app->add_option("--nbest-out", nb_nbest_out, "re-ranked n-best file");
    r.input_options = {"--in", "--weights"};
    r.out = &nb_out;
    r.run = [&](const Ctx&) {
      auto lists = read_nbest_arg(nb_in);
      auto model = LinearModel::load_file(nb_weights);
      std::vector<NBestList> ranked;
      for (const auto& l : lists) ranked.push_back(rerank(l, model));
      with_output(nb_out, [&](std::ostream& o) {
        for (const auto& l : ranked) o << join(l.hypotheses.front().tokens) << '\n';
      });
      if (!nb_nbest_out.empty()) write_nbest_file(nb_nbest_out, ranked);
    };
  }

  // tune
  std::string tu_nbest, tu_init, tu_out, tu_feature;
  MetricArgs tu_metric;
  MertOptions mert_opts;
  MiraOptions mira_opts;
  std::vector<double> tu_grid = default_lm_grid();
  {
    auto* g = group("tune", "weight tuning on development n-best lists");
    auto common = [&](Command& c) {
      c.app->add_option("--nbest", tu_nbest, "development n-best file")->required();
      c.app->add_option("--init", tu_init, "initial weights (default all 0)");
      c.app->add_option("--out", tu_out, "tuned weights (default stdout)");
      tu_metric.add(c.app);
      c.input_options = {"--nbest", "--init", "--gold", "--src", "--ref"};
      c.out = &tu_out;
    };
    auto init_model = [&]() { return tu_init.empty() ? LinearModel{} : LinearModel::load_file(tu_init); };

    auto& m = leaf(g, "mert", "exact line-search MERT over dense features");
    common(m);
    m.app->add_option("--directions", mert_opts.random_directions, "random directions per iteration")
        ->capture_default_str();
    m.app->add_option("--max-iterations", mert_opts.max_iterations, "iteration cap")->capture_default_str();
    m.run = [&, init_model](const Ctx& c) {
      auto metric = tu_metric.build();
      MertOptions opts = mert_opts;
      opts.seed = c.seed;
      auto result = mert_tune(parse_nbest_file(tu_nbest), *metric, init_model(), opts);
      write_history(std::cout, result);
      with_output(tu_out, [&](std::ostream& o) { result.model.save(o); });
    };

    auto& b = leaf(g, "mira", "batch hope/fear MIRA");
    common(b);
    b.app->add_option("--C", mira_opts.C, "step-size cap")->check(CLI::PositiveNumber)->capture_default_str();
    b.app->add_option("--epochs", mira_opts.epochs, "passes over the data")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    b.run = [&, init_model](const Ctx& c) {
      auto metric = tu_metric.build();
      MiraOptions opts = mira_opts;
      opts.seed = c.seed;
      auto result = mira_tune(parse_nbest_file(tu_nbest), *metric, init_model(), opts);
      write_history(std::cout, result);
      with_output(tu_out, [&](std::ostream& o) { result.model.save(o); });
    };

    auto& gr = leaf(g, "grid", "grid search for one feature weight (default grid 0..0.5 step 0.05, covering 0.2 and 0.25)");
    common(gr);
    gr.app->add_option("--feature", tu_feature, "feature whose weight is searched")->required();
    gr.app->add_option("--grid", tu_grid, "comma-separated grid values")->delimiter(',')->capture_default_str();
    gr.run = [&, init_model](const Ctx&) {
      auto metric = tu_metric.build();
      auto base = init_model();
      auto result = grid_search_weight(parse_nbest_file(tu_nbest), *metric, base, tu_feature, tu_grid);
      for (const auto& [w, s] : result.evaluated)
        std::cout << tu_feature << '=' << format_number(w) << " score " << format_number(s) << '\n';
      std::cout << "selected " << tu_feature << '=' << format_number(result.weight) << " score "
                << format_number(result.score) << '\n';
      base.set(tu_feature, result.weight);
      with_output(tu_out, [&](std::ostream& o) {
        if (tu_out.empty()) return;
        base.save(o);
      });
    };
  }

  // pipeline
  std::string pl_config, pl_in, pl_out, pl_trace, pl_nbest;
  {
    auto* g = group("pipeline", "multi-stage correction");
    auto& r = leaf(g, "run", "run a stage configuration over a corpus");
    r.app->add_option("--config", pl_config, "pipeline JSON config")->required();
    r.app->add_option("--in", pl_in, "tokenized input (default stdin)");
    r.app->add_option("--out", pl_out, "1-best output (default stdout)");
    r.app->add_option("--trace-dir", pl_trace, "per-stage 1-best directory (default <out>.trace)");
    r.app->add_option("--nbest-out", pl_nbest, "final stage n-best lists");
    r.input_options = {"--config", "--in"};
    r.out = &pl_out;
    r.run = [&](const Ctx& c) {
      auto cfg = load_pipeline_config(pl_config);
      auto result = pipeline_run(cfg, read_corpus_arg(pl_in), c.jobs);
      with_output(pl_out, [&](std::ostream& o) { write_corpus(o, result.output); });
      std::string trace = pl_trace;
      if (trace.empty() && !pl_out.empty() && pl_out != "-") trace = pl_out + ".trace";
      if (!trace.empty()) {
        fs::create_directories(trace);
        for (std::size_t k = 0; k < result.traces.size(); ++k) {
          auto name = "stage" + std::to_string(k) + "_" + cfg.stages[k].label + ".txt";
          write_corpus_file((fs::path(trace) / name).string(), result.traces[k]);
        }
      }
      if (!pl_nbest.empty()) write_nbest_file(pl_nbest, result.final_nbests);
    };
  }

  // spell
  std::string sp_in, sp_out, sp_lexicon, sp_bpe, sp_word_lm, sp_word_train, sp_char_lm, sp_changes;
  int sp_char_order = 4, sp_word_order = 3;
  SpellOptions sp_opts;
  {
    auto* g = group("spell", "BPE-gated spell-checking");
    auto& r = leaf(g, "run", "correct out-of-lexicon words that BPE would split");
    r.app->add_option("--lexicon", sp_lexicon, "word<TAB>freq lexicon")->required();
    r.app->add_option("--bpe", sp_bpe, "BPE merge table")->required();
    r.app->add_option("--word-lm", sp_word_lm, "word LM (ARPA)");
    r.app->add_option("--word-lm-train", sp_word_train, "train the word LM on this text instead");
    r.app->add_option("--word-lm-order", sp_word_order, "order when training the word LM")->capture_default_str();
    r.app->add_option("--char-lm", sp_char_lm, "character LM (ARPA); default: trained on the lexicon");
    r.app->add_option("--char-lm-order", sp_char_order, "order when training the character LM")->capture_default_str();
    r.app->add_option("--lambda-char", sp_opts.lambda_char, "character score weight")->capture_default_str();
    r.app->add_option("--lambda-lm", sp_opts.lambda_lm, "word LM weight")->capture_default_str();
    r.app->add_option("--tau", sp_opts.tau, "acceptance margin (natural log)")->capture_default_str();
    r.app->add_option("--in", sp_in, "tokenized input (default stdin)");
    r.app->add_option("--out", sp_out, "output (default stdout)");
    r.app->add_option("--changes", sp_changes, "TSV of replacements made");
    r.input_options = {"--lexicon", "--bpe", "--word-lm", "--word-lm-train", "--char-lm", "--in"};
    r.out = &sp_out;
    r.run = [&](const Ctx&) {
      auto lexicon = std::make_shared<const Lexicon>(Lexicon::load_file(sp_lexicon));
      auto bpe = std::make_shared<const BpeModel>(BpeModel::load_file(sp_bpe));
      std::shared_ptr<const NGramModel> word_lm;
      if (!sp_word_lm.empty())
        word_lm = std::make_shared<const NGramModel>(NGramModel::load_arpa_file(sp_word_lm));
      else if (!sp_word_train.empty())
        word_lm = std::make_shared<const NGramModel>(NGramModel::train(read_corpus_file(sp_word_train), sp_word_order));
      else
        throw UsageError("spell run needs --word-lm or --word-lm-train");
      auto char_lm = std::make_shared<const NGramModel>(
          sp_char_lm.empty() ? NGramModel::train(lexicon_char_corpus(*lexicon), sp_char_order)
                             : NGramModel::load_arpa_file(sp_char_lm));
      SpellChecker checker(lexicon, bpe, char_lm, word_lm, sp_opts);
      auto corpus = read_corpus_arg(sp_in);
      Corpus fixed;
      std::vector<std::vector<SpellChange>> changes(corpus.size());
      for (std::size_t i = 0; i < corpus.size(); ++i) fixed.push_back(checker.correct(corpus[i], &changes[i]));
      with_output(sp_out, [&](std::ostream& o) { write_corpus(o, fixed); });
      if (!sp_changes.empty())
        with_output(sp_changes, [&](std::ostream& o) {
          o << "sentence\tposition\tfrom\tto\tmargin\n";
          for (std::size_t i = 0; i < changes.size(); ++i)
            for (const auto& ch : changes[i])
              o << i << '\t' << ch.position << '\t' << ch.from << '\t' << ch.to << '\t' << format_number(ch.margin)
                << '\n';
        });
    };
  }

  // human
  double hu_score = 0.0;
  double hu_human = 0.0;
  std::string hu_metric = "m2", hu_gold, hu_src;
  std::vector<std::string> hu_refs;
  {
    auto* g = group("human", "comparison with human annotators");
    auto& c = leaf(g, "compare", "system score as a percentage of human performance");
    c.app->add_option("--score", hu_score, "system score (same scale as the human score)")->required();
    c.app->add_option("--metric", hu_metric, "m2 or gleu; picks the published human default")
        ->check(CLI::IsMember({"m2", "gleu"}))
        ->capture_default_str();
    c.app->add_option("--human", hu_human, "human score (default 72.15 for m2, 62.38 for gleu)");
    c.app->add_option("--gold", hu_gold, "M2 gold file: report leave-one-out annotator scores");
    c.app->add_option("--src", hu_src, "GLEU source corpus for leave-one-out scores");
    c.app->add_option("--ref", hu_refs, "GLEU reference corpora for leave-one-out scores");
    c.input_options = {"--gold", "--src", "--ref"};
    c.run = [&](const Ctx& ctx_) {
      double human = hu_human > 0 ? hu_human : (hu_metric == "m2" ? kConll10HumanM2 : kJflegHumanGleu);
      std::vector<double> loo;
      if (!hu_gold.empty()) {
        loo = m2_leave_one_out_scores(parse_m2_file(hu_gold));
      } else if (!hu_src.empty() || !hu_refs.empty()) {
        if (hu_src.empty() || hu_refs.size() < 2) throw UsageError("leave-one-out GLEU needs --src and >= 2 --ref");
        GleuConfig cfg;
        cfg.seed = ctx_.seed;
        loo = gleu_leave_one_out_scores(read_corpus_file(hu_src), load_references(hu_refs), cfg);
      }
      if (!loo.empty()) {
        auto ms = human_leave_one_out(loo);
        for (std::size_t i = 0; i < loo.size(); ++i)
          std::cout << "annotator " << i << " score " << format_number(loo[i]) << '\n';
        std::cout << "human mean " << format_number(ms.mean) << " sd " << format_number(ms.sd) << '\n';
        if (hu_human <= 0) human = ms.mean;
      }
      char buf[96];
      std::snprintf(buf, sizeof buf, "ratio %.2f (system %s / human %s)\n", human_ratio(hu_score, human),
                    format_number(hu_score).c_str(), format_number(human).c_str());
      std::cout << buf;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc != 0) {
      std::cerr << app.help();
      return 1;
    }
    return 0;
  }

  for (auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    auto start = std::chrono::steady_clock::now();
    int rc = 0;
    try {
      cmd.run(ctx);
    } catch (const UsageError& e) {
      std::cerr << "gecx: " << e.what() << '\n';
      rc = 1;
    } catch (const std::exception& e) {
      std::cerr << "gecx: " << e.what() << '\n';
      rc = 2;
    }
    std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    try {
      write_manifest(cmd, ctx, took.count(), rc);
    } catch (const std::exception& e) {
      std::cerr << "gecx: manifest: " << e.what() << '\n';
      if (rc == 0) rc = 2;
    }
    return rc;
  }
  std::cerr << app.help();
  return 1;
}
