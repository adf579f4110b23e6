#include "gecx/alignment.hpp"

#include <algorithm>

namespace gecx {

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::kMatch: return "match";
    case OpKind::kSubstitute: return "sub";
    case OpKind::kInsert: return "ins";
    case OpKind::kDelete: return "del";
  }
  return "?";
}

OpCounts count_ops(const Alignment& ops) {
  OpCounts c;
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::kMatch: ++c.match; break;
      case OpKind::kSubstitute: ++c.substitute; break;
      case OpKind::kInsert: ++c.insert; break;
      case OpKind::kDelete: ++c.del; break;
    }
  }
  return c;
}

Alignment align_sequences(const std::vector<std::string>& src, const std::vector<std::string>& hyp) {
  const std::size_t n = src.size();
  const std::size_t m = hyp.size();
  const std::size_t w = m + 1;
  std::vector<std::size_t> d((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) d[i * w] = i;
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diag = d[(i - 1) * w + j - 1] + (src[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i * w + j] = std::min({diag, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
    }
  }

  Alignment ops;
  ops.reserve(n + m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = d[i * w + j];
    if (i > 0 && j > 0 && src[i - 1] == hyp[j - 1] && here == d[(i - 1) * w + j - 1]) {
      ops.push_back({OpKind::kMatch, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && j > 0 && here == d[(i - 1) * w + j - 1] + 1) {
      ops.push_back({OpKind::kSubstitute, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && here == d[(i - 1) * w + j] + 1) {
      ops.push_back({OpKind::kDelete, i - 1, std::nullopt});
      --i;
    } else {
      ops.push_back({OpKind::kInsert, std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

Alignment align_words(const TokenSentence& src, const TokenSentence& hyp) {
  return align_sequences(src.tokens, hyp.tokens);
}

CharAlignment align_chars(std::string_view a, std::string_view b) {
  auto ops = align_sequences(utf8_chars(a), utf8_chars(b));
  CharAlignment out;
  out.counts = count_ops(ops);
  out.distance = out.counts.distance();
  return out;
}

// Same segmentation as utf8_chars; an invalid byte stands for itself.
std::vector<char32_t> code_points(std::string_view s) {
  std::vector<char32_t> out;
  for (const auto& ch : utf8_chars(s)) {
    auto lead = static_cast<unsigned char>(ch[0]);
    if (ch.size() == 1) {
      out.push_back(lead);
      continue;
    }
    char32_t cp = lead & (0xFF >> (ch.size() + 1));
    for (std::size_t k = 1; k < ch.size(); ++k) cp = (cp << 6) | (static_cast<unsigned char>(ch[k]) & 0x3F);
    out.push_back(cp);
  }
  return out;
}

std::size_t char_distance(std::string_view a, std::string_view b) {
  auto x = code_points(a);
  auto y = code_points(b);
  return levenshtein_distance<char32_t>(x, y);
}

std::size_t damerau_distance(std::string_view a, std::string_view b) {
  auto x = utf8_chars(a);
  auto y = utf8_chars(b);
  const std::size_t n = x.size(), m = y.size(), w = m + 1;
  std::vector<std::size_t> d((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) d[i * w] = i;
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t cost = x[i - 1] == y[j - 1] ? 0 : 1;
      std::size_t best = std::min({d[(i - 1) * w + j - 1] + cost, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
      if (i > 1 && j > 1 && x[i - 1] == y[j - 2] && x[i - 2] == y[j - 1]) {
        best = std::min(best, d[(i - 2) * w + j - 2] + 1);
      }
      d[i * w + j] = best;
    }
  }
  return d[n * w + m];
}

}  // namespace gecx
