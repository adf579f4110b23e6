#include "gecx/sentence.hpp"

#include <algorithm>
#include <fstream>

namespace gecx {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

TokenSentence parse_tokens(std::string_view line, std::optional<std::size_t> id) {
  return TokenSentence(split_whitespace(line), id);
}

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::string join(const TokenSentence& s) { return join(s.tokens); }

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> read_lines_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return read_lines(in);
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::size_t n = 0;
  for (const auto& line : read_lines(in)) corpus.push_back(parse_tokens(line, n++));
  return corpus;
}

Corpus read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& s : corpus) out << join(s) << '\n';
}

void write_corpus_file(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  write_corpus(out, corpus);
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
  });
  return out;
}

std::vector<std::string> utf8_chars(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (c >= 0xF0 && c < 0xF8) len = 4;
    else if (c >= 0xE0) len = c < 0xF0 ? 3 : 1;
    else if (c >= 0xC0) len = 2;
    if (i + len > s.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

}  // namespace gecx
