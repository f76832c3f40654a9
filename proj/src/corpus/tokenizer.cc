// Copyright 2026 The LegalSeq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "legalseq/base/utf8.h"
#include "legalseq/corpus/document.h"

namespace legalseq {

std::vector<Token> Tokenize(std::string_view text, int base_offset) {
  const std::u32string cps = utf8::Decode(text);
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (utf8::IsSpace(c) || c < 0x20) {
      ++i;
      continue;
    }
    if (utf8::IsPunct(c)) {
      tokens.push_back({utf8::Encode(c), base_offset + static_cast<int>(i),
                        base_offset + static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    size_t j = i;
    while (j < cps.size() && !utf8::IsSpace(cps[j]) && cps[j] >= 0x20 &&
           !utf8::IsPunct(cps[j])) {
      ++j;
    }
    tokens.push_back({utf8::Encode(std::u32string_view(cps).substr(i, j - i)),
                      base_offset + static_cast<int>(i),
                      base_offset + static_cast<int>(j)});
    i = j;
  }
  return tokens;
}

std::vector<Token> TokenizeSentence(const SentenceSpan &sentence) {
  return Tokenize(sentence.surface, sentence.start_char);
}

std::vector<std::string> Surfaces(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token &t : tokens) out.push_back(t.surface);
  return out;
}

}  // namespace legalseq
