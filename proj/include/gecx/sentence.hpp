#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gecx {

// Raised for malformed input data (files, corpora, configs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tokenized sentence: the unit every component exchanges.
// Tokens are non-empty and contain no whitespace.
struct TokenSentence {
  std::vector<std::string> tokens;
  std::optional<std::size_t> id;

  TokenSentence() = default;
  TokenSentence(std::vector<std::string> toks, std::optional<std::size_t> line_id = std::nullopt)
      : tokens(std::move(toks)), id(line_id) {}
  TokenSentence(std::initializer_list<std::string> toks) : tokens(toks) {}

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }

  // Token equality only; the corpus id is bookkeeping.
  friend bool operator==(const TokenSentence& a, const TokenSentence& b) { return a.tokens == b.tokens; }
};

using Corpus = std::vector<TokenSentence>;

bool is_space(char c);

// Split on runs of ASCII whitespace.
std::vector<std::string> split_whitespace(std::string_view line);

// Whitespace-split an already tokenized line.
TokenSentence parse_tokens(std::string_view line, std::optional<std::size_t> id = std::nullopt);

std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");
std::string join(const TokenSentence& s);

// One pre-tokenized sentence per line; ids are 0-based line indices.
Corpus read_corpus(std::istream& in);
Corpus read_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, const Corpus& corpus);
void write_corpus_file(const std::string& path, const Corpus& corpus);

// Lines of a text file without trailing '\n' / '\r'.
std::vector<std::string> read_lines(std::istream& in);
std::vector<std::string> read_lines_file(const std::string& path);

std::string ascii_lower(std::string_view s);

// Split UTF-8 into code points; invalid bytes become single-byte units.
std::vector<std::string> utf8_chars(std::string_view s);

}  // namespace gecx
