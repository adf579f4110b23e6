#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gecx/sentence.hpp"

namespace gecx {

// A named run of feature values as written in an n-best line ("Ops= 1 0 0").
// Single values keep their name; runs of k > 1 values expand to
// name0 .. name{k-1}.
struct FeatureGroup {
  std::string name;
  std::vector<double> values;
};

struct Hypothesis {
  TokenSentence tokens;
  std::vector<FeatureGroup> features;
  double model_score = 0.0;

  std::vector<std::pair<std::string, double>> flat_features() const;
  std::optional<double> feature(const std::string& name) const;
  // Throws DataError when any expanded name already exists.
  void add_feature(const std::string& name, double value);
  void add_group(FeatureGroup group);
};

struct NBestList {
  std::size_t sentence_id = 0;
  std::vector<Hypothesis> hypotheses;  // rank order
};

// `<id> ||| <tokens> ||| <Name>= <v> [<v>...] ... ||| <total>`
// Lines with equal ids form one list; ids must be non-decreasing.
// Errors name the line number.
std::vector<NBestList> parse_nbest(std::istream& in);
std::vector<NBestList> parse_nbest_file(const std::string& path);
void write_nbest(std::ostream& out, const std::vector<NBestList>& lists);
void write_nbest_file(const std::string& path, const std::vector<NBestList>& lists);

// Weight vector over flat feature names; unknown names weigh 0.
class LinearModel {
 public:
  LinearModel() = default;
  explicit LinearModel(std::map<std::string, double> weights);

  double weight(const std::string& name) const;
  // Throws std::invalid_argument on non-finite weights.
  void set(const std::string& name, double w);
  const std::map<std::string, double>& weights() const { return weights_; }

  double score(const Hypothesis& h) const;

  // "name value" lines.
  static LinearModel load(std::istream& in);
  static LinearModel load_file(const std::string& path);
  void save(std::ostream& out) const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  std::map<std::string, double> weights_;
};

// Index of argmax model.score; ties go to the lowest rank.
// Throws std::invalid_argument on an empty list.
std::size_t best_index(const NBestList& nbest, const LinearModel& model);
const Hypothesis& linear_rescore(const NBestList& nbest, const LinearModel& model);

// Sets model_score to the linear score and stable-sorts descending.
NBestList rerank(const NBestList& nbest, const LinearModel& model);

}  // namespace gecx
