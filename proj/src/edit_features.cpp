#include "gecx/edit_features.hpp"

#include <cmath>
#include <stdexcept>

#include "gecx/alignment.hpp"
#include "gecx/edits.hpp"

namespace gecx {

void FeatureVector::add_dense(const std::string& name, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value for feature " + name);
  for (const auto& [n, v] : dense)
    if (n == name) throw std::invalid_argument("duplicate feature " + name);
  dense.emplace_back(name, value);
}

void FeatureVector::add_sparse(const std::string& pattern, long count) {
  if (count < 1) throw std::invalid_argument("sparse count must be >= 1");
  sparse[pattern] += count;
}

double FeatureVector::dense_value(const std::string& name) const {
  for (const auto& [n, v] : dense)
    if (n == name) return v;
  return 0.0;
}

FeatureVector dense_edit_features(const TokenSentence& src, const TokenSentence& hyp) {
  auto ops = align_words(src, hyp);
  auto word = count_ops(ops);
  OpCounts chars;
  for (const auto& op : ops) {
    if (op.kind != OpKind::kSubstitute) continue;
    auto c = align_chars(src[*op.src_index], hyp[*op.hyp_index]).counts;
    chars.substitute += c.substitute;
    chars.insert += c.insert;
    chars.del += c.del;
  }
  FeatureVector f;
  f.add_dense("word_lev_dist", static_cast<double>(word.distance()));
  f.add_dense("n_sub", static_cast<double>(word.substitute));
  f.add_dense("n_ins", static_cast<double>(word.insert));
  f.add_dense("n_del", static_cast<double>(word.del));
  f.add_dense("n_match", static_cast<double>(word.match));
  f.add_dense("char_dist", static_cast<double>(chars.distance()));
  f.add_dense("char_sub", static_cast<double>(chars.substitute));
  f.add_dense("char_ins", static_cast<double>(chars.insert));
  f.add_dense("char_del", static_cast<double>(chars.del));
  return f;
}

FeatureVector sparse_pattern_features(const TokenSentence& src, const TokenSentence& hyp,
                                      const WordClassMap& classes) {
  FeatureVector f;
  auto edits = extract_edits(align_words(src, hyp), hyp, 0).base;
  for (const auto& e : edits) {
    const char* op = e.start == e.end ? "ins" : e.correction.empty() ? "del" : "sub";
    std::vector<std::string> from(src.tokens.begin() + static_cast<std::ptrdiff_t>(e.start),
                                  src.tokens.begin() + static_cast<std::ptrdiff_t>(e.end));
    std::string left = e.start == 0 ? "<s>" : classes.class_of(src[e.start - 1]);
    std::string right = e.end >= src.size() ? "</s>" : classes.class_of(src[e.end]);
    f.add_sparse(std::string(op) + "(" + join(from, "_") + "→" + join(e.correction, "_") + ")|L=" + left +
                 "|R=" + right);
  }
  return f;
}

}  // namespace gecx
