#include "gecx/ngram_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace gecx {
namespace {

constexpr double kLn10 = 2.302585092994045684;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, std::size_t lineno) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("ARPA line " + std::to_string(lineno) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

NGramModel::Id NGramModel::intern(const std::string& word) {
  auto [it, inserted] = ids_.emplace(word, static_cast<Id>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

NGramModel::Id NGramModel::lookup(const std::string& word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? ids_.at(kUnk) : it->second;
}

std::string NGramModel::key(std::span<const Id> ids) {
  std::string k(ids.size() * sizeof(Id), '\0');
  if (!ids.empty()) std::memcpy(k.data(), ids.data(), k.size());
  return k;
}

NGramModel NGramModel::train(const Corpus& corpus, int order, double discount) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (!(discount > 0.0 && discount < 1.0)) throw std::invalid_argument("discount must lie in (0, 1)");
  if (corpus.empty()) throw DataError("no training data");

  NGramModel m;
  m.order_ = order;
  const Id bos = m.intern(kBos);
  const Id eos = m.intern(kEos);
  const Id unk = m.intern(kUnk);

  // counts[k-1]: k-gram -> count (raw at the top order, continuation below).
  std::vector<std::map<std::vector<Id>, double>> counts(static_cast<std::size_t>(order));
  const auto n = static_cast<std::size_t>(order);
  for (const auto& s : corpus) {
    std::vector<Id> seq(n - 1, bos);
    for (const auto& t : s.tokens) seq.push_back(m.intern(t));
    seq.push_back(eos);
    for (std::size_t pos = n - 1; pos < seq.size(); ++pos) {
      counts[n - 1][std::vector<Id>(seq.begin() + static_cast<std::ptrdiff_t>(pos + 1 - n),
                                     seq.begin() + static_cast<std::ptrdiff_t>(pos + 1))] += 1.0;
    }
  }
  // Continuation counts: number of distinct left extensions.
  for (std::size_t k = n - 1; k >= 1; --k) {
    for (const auto& [gram, c] : counts[k]) {
      counts[k - 1][std::vector<Id>(gram.begin() + 1, gram.end())] += 1.0;
    }
  }
  counts[0][{unk}] += 1.0;

  m.tables_.assign(n, Table{});
  // Unigrams: interpolation with the uniform distribution over the
  // vocabulary reduces to c(w) / total.
  double total = 0.0;
  for (const auto& [gram, c] : counts[0]) total += c;
  const double types = static_cast<double>(counts[0].size());
  for (const auto& [gram, c] : counts[0]) {
    double p = (c - discount) / total + discount * types / total / types;
    m.tables_[0][key(gram)] = Entry{std::log(p), 0.0, true, false};
  }

  for (std::size_t k = 2; k <= n; ++k) {
    struct ContextStats {
      double sum = 0.0;
      double distinct = 0.0;
    };
    std::map<std::vector<Id>, ContextStats> contexts;
    for (const auto& [gram, c] : counts[k - 1]) {
      auto& cs = contexts[std::vector<Id>(gram.begin(), gram.end() - 1)];
      cs.sum += c;
      cs.distinct += 1.0;
    }
    auto& lower = m.tables_[k - 2];
    for (const auto& [ctx, cs] : contexts) {
      double gamma = discount * cs.distinct / cs.sum;
      auto& e = lower[key(ctx)];
      e.log_backoff = std::log(gamma);
      e.has_backoff = true;
    }
    auto& table = m.tables_[k - 1];
    for (const auto& [gram, c] : counts[k - 1]) {
      const auto& cs = contexts[std::vector<Id>(gram.begin(), gram.end() - 1)];
      double gamma = discount * cs.distinct / cs.sum;
      std::vector<Id> suffix(gram.begin() + 1, gram.end());
      double p_lower = std::exp(m.log_prob_ids(std::span<const Id>(suffix.data(), suffix.size() - 1), suffix.back()));
      double p = (c - discount) / cs.sum + gamma * p_lower;
      auto& e = table[key(gram)];
      e.log_prob = std::log(p);
      e.has_prob = true;
    }
  }
  return m;
}

double NGramModel::log_prob_ids(std::span<const Id> context, Id word) const {
  const std::size_t max_ctx = static_cast<std::size_t>(order_) - 1;
  if (context.size() > max_ctx) context = context.subspan(context.size() - max_ctx);
  std::vector<Id> gram(context.begin(), context.end());
  gram.push_back(word);
  double acc = 0.0;
  for (std::size_t len = context.size();; --len) {
    std::span<const Id> g(gram.data() + (context.size() - len), len + 1);
    const auto& table = tables_[len];
    auto it = table.find(key(g));
    if (it != table.end() && it->second.has_prob) return acc + it->second.log_prob;
    if (len == 0) break;
    auto ctx = tables_[len - 1].find(key(g.first(len)));
    if (ctx != tables_[len - 1].end() && ctx->second.has_backoff) acc += ctx->second.log_backoff;
  }
  // Words without a unigram probability (e.g. <s>) cannot be predicted.
  return -std::numeric_limits<double>::infinity();
}

double NGramModel::log_prob(std::span<const std::string> context, const std::string& word) const {
  std::vector<Id> ids;
  ids.reserve(context.size());
  for (const auto& w : context) ids.push_back(lookup(w));
  return log_prob_ids(ids, lookup(word));
}

double NGramModel::prob(std::span<const std::string> context, const std::string& word) const {
  return std::exp(log_prob(context, word));
}

SentenceScore NGramModel::score(const TokenSentence& s) const {
  std::vector<Id> history(static_cast<std::size_t>(order_) - 1, ids_.at(kBos));
  SentenceScore out;
  auto step = [&](Id w) {
    out.logprob += log_prob_ids(history, w);
    ++out.n_scored;
    if (!history.empty()) {
      history.erase(history.begin());
      history.push_back(w);
    }
  };
  for (const auto& t : s.tokens) step(lookup(t));
  step(ids_.at(kEos));
  out.normalized = out.logprob / static_cast<double>(out.n_scored);
  return out;
}

double NGramModel::perplexity(const Corpus& corpus) const {
  if (corpus.empty()) throw DataError("empty corpus");
  double logprob = 0.0;
  double scored = 0.0;
  for (const auto& s : corpus) {
    auto sc = score(s);
    logprob += sc.logprob;
    scored += static_cast<double>(sc.n_scored);
  }
  return std::exp(-logprob / scored);
}

std::vector<std::string> NGramModel::vocabulary() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : tables_[0]) {
    if (!e.has_prob) continue;
    Id id;
    std::memcpy(&id, k.data(), sizeof id);
    out.push_back(words_[id]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool NGramModel::contains(const std::string& word) const {
  auto it = ids_.find(word);
  if (it == ids_.end()) return false;
  Id id = it->second;
  auto e = tables_[0].find(key(std::span<const Id>(&id, 1)));
  return e != tables_[0].end() && e->second.has_prob;
}

std::size_t NGramModel::ngram_count(int n) const {
  if (n < 1 || n > order_) return 0;
  return static_cast<std::size_t>(std::count_if(tables_[static_cast<std::size_t>(n - 1)].begin(),
                                                tables_[static_cast<std::size_t>(n - 1)].end(),
                                                [](const auto& kv) { return kv.second.has_prob; }));
}

void NGramModel::save_arpa(std::ostream& out) const {
  std::vector<std::vector<std::pair<std::string, const Entry*>>> sections(tables_.size());
  for (std::size_t k = 0; k < tables_.size(); ++k) {
    for (const auto& [kbytes, e] : tables_[k]) {
      std::vector<Id> ids(kbytes.size() / sizeof(Id));
      std::memcpy(ids.data(), kbytes.data(), kbytes.size());
      std::vector<std::string> ws;
      for (Id id : ids) ws.push_back(words_[id]);
      sections[k].emplace_back(join(ws), &e);
    }
    std::sort(sections[k].begin(), sections[k].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  out << "\n\\data\\\n";
  for (std::size_t k = 0; k < sections.size(); ++k) out << "ngram " << k + 1 << '=' << sections[k].size() << '\n';
  for (std::size_t k = 0; k < sections.size(); ++k) {
    out << "\n\\" << k + 1 << "-grams:\n";
    for (const auto& [text, e] : sections[k]) {
      out << (e->has_prob ? format_double(e->log_prob / kLn10) : std::string("-99")) << '\t' << text;
      if (e->has_backoff) out << '\t' << format_double(e->log_backoff / kLn10);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

NGramModel NGramModel::load_arpa(std::istream& in) {
  NGramModel m;
  auto lines = read_lines(in);
  std::size_t i = 0;
  while (i < lines.size() && lines[i] != "\\data\\") ++i;
  if (i == lines.size()) throw DataError("ARPA: missing \\data\\ header");
  ++i;
  std::vector<std::size_t> declared;
  for (; i < lines.size() && lines[i].starts_with("ngram "); ++i) {
    auto eq = lines[i].find('=');
    if (eq == std::string::npos) throw DataError("ARPA line " + std::to_string(i + 1) + ": bad count line");
    declared.push_back(static_cast<std::size_t>(parse_double(std::string_view(lines[i]).substr(eq + 1), i + 1)));
  }
  if (declared.empty()) throw DataError("ARPA: no n-gram counts");
  m.order_ = static_cast<int>(declared.size());
  m.tables_.assign(declared.size(), Table{});
  m.intern(kBos);
  m.intern(kEos);
  m.intern(kUnk);

  std::size_t current = 0;
  std::vector<std::size_t> seen(declared.size(), 0);
  for (; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.empty()) continue;
    if (line == "\\end\\") break;
    if (line.front() == '\\') {
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(line.data() + 1, line.data() + line.size(), k);
      if (ec != std::errc() || k < 1 || k > declared.size() || std::string_view(ptr) != "-grams:") {
        throw DataError("ARPA line " + std::to_string(i + 1) + ": bad section header");
      }
      current = k;
      continue;
    }
    if (current == 0) throw DataError("ARPA line " + std::to_string(i + 1) + ": n-gram outside a section");
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw DataError("ARPA line " + std::to_string(i + 1) + ": expected prob<TAB>ngram[<TAB>backoff]");
    }
    auto words = split_whitespace(fields[1]);
    if (words.size() != current) throw DataError("ARPA line " + std::to_string(i + 1) + ": wrong n-gram length");
    std::vector<Id> ids;
    for (const auto& w : words) ids.push_back(m.intern(w));
    Entry& e = m.tables_[current - 1][key(ids)];
    double lp = parse_double(fields[0], i + 1);
    if (lp > -99.0) {
      e.log_prob = lp * kLn10;
      e.has_prob = true;
    }
    if (fields.size() == 3) {
      e.log_backoff = parse_double(fields[2], i + 1) * kLn10;
      e.has_backoff = true;
    }
    ++seen[current - 1];
  }
  for (std::size_t k = 0; k < declared.size(); ++k) {
    if (seen[k] != declared[k]) {
      throw DataError("ARPA: order " + std::to_string(k + 1) + " declares " + std::to_string(declared[k]) +
                      " n-grams but lists " + std::to_string(seen[k]));
    }
  }
  if (!m.contains(kUnk)) {
    // Models without <unk> still need a defined OOV path.
    Id unk = m.ids_.at(kUnk);
    m.tables_[0][key(std::span<const Id>(&unk, 1))] = Entry{-99.0 * kLn10, 0.0, true, false};
  }
  return m;
}

NGramModel NGramModel::load_arpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return load_arpa(in);
}

}  // namespace gecx
