#pragma once

#include <string_view>

#include "gecx/sentence.hpp"

namespace gecx {

// Rule-based word tokenizer:
//  - split on whitespace;
//  - detach leading and trailing runs of ASCII punctuation;
//  - split the English clitics 's 're 'll 've n't 'd 'm (case-insensitive).
// Idempotent: tokenize(join(tokenize(x))) == tokenize(x).
TokenSentence tokenize(std::string_view line);

bool is_ascii_punct(char c);

}  // namespace gecx
