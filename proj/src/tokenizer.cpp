#include "gecx/tokenizer.hpp"

#include <array>

namespace gecx {
namespace {

constexpr std::array<std::string_view, 7> kClitics = {"n't", "'s", "'re", "'ll", "'ve", "'d", "'m"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && ascii_lower(a) == ascii_lower(b);
}

bool is_clitic(std::string_view w) {
  for (auto c : kClitics)
    if (iequals(w, c)) return true;
  return false;
}

bool all_punct(std::string_view w) {
  for (char c : w)
    if (!is_ascii_punct(c)) return false;
  return true;
}

void tokenize_chunk(std::string_view w, std::vector<std::string>& out);

// core starts and ends with a non-punctuation byte.
void split_core(std::string_view core, std::vector<std::string>& out) {
  for (auto clitic : kClitics) {
    if (core.size() <= clitic.size()) continue;
    auto tail = core.substr(core.size() - clitic.size());
    if (!iequals(tail, clitic)) continue;
    tokenize_chunk(core.substr(0, core.size() - clitic.size()), out);
    out.emplace_back(tail);
    return;
  }
  out.emplace_back(core);
}

void tokenize_chunk(std::string_view w, std::vector<std::string>& out) {
  if (w.empty()) return;
  if (all_punct(w) || is_clitic(w)) {
    out.emplace_back(w);
    return;
  }
  std::size_t begin = 0;
  while (is_ascii_punct(w[begin])) ++begin;
  std::size_t end = w.size();
  while (is_ascii_punct(w[end - 1])) --end;
  if (begin > 0) out.emplace_back(w.substr(0, begin));
  split_core(w.substr(begin, end - begin), out);
  if (end < w.size()) out.emplace_back(w.substr(end));
}

}  // namespace

bool is_ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= 0x21 && u <= 0x2F) || (u >= 0x3A && u <= 0x40) || (u >= 0x5B && u <= 0x60) ||
         (u >= 0x7B && u <= 0x7E);
}

TokenSentence tokenize(std::string_view line) {
  TokenSentence s;
  for (const auto& chunk : split_whitespace(line)) tokenize_chunk(chunk, s.tokens);
  return s;
}

}  // namespace gecx
