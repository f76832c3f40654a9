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

#ifndef LEGALSEQ_BASE_UTF8_H_
#define LEGALSEQ_BASE_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace legalseq::utf8 {

// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD, one
// replacement per offending byte.
std::u32string Decode(std::string_view text);

std::string Encode(std::u32string_view text);
std::string Encode(char32_t cp);

// Number of code points in a UTF-8 string.
size_t Length(std::string_view text);

// Maps code-point offsets to byte offsets for one UTF-8 string, so that
// annotation offsets (code points) can slice the stored bytes directly.
class CodepointIndex {
 public:
  CodepointIndex() = default;
  explicit CodepointIndex(std::string_view text);

  // Number of code points.
  size_t size() const { return byte_offsets_.size() - 1; }

  size_t ByteOffset(size_t cp) const { return byte_offsets_[cp]; }

  // Substring of `text` covering code points [start, end).
  std::string Slice(std::string_view text, size_t start, size_t end) const;

 private:
  std::vector<size_t> byte_offsets_{0};
};

// Character classes used by the reference tokenizer and the regularizer.
bool IsSpace(char32_t cp);
bool IsPunct(char32_t cp);
bool IsLetter(char32_t cp);
bool IsDigit(char32_t cp);

// Lowercase mapping for ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic
// basic ranges. Other code points are returned unchanged.
char32_t ToLower(char32_t cp);

}  // namespace legalseq::utf8

#endif  // LEGALSEQ_BASE_UTF8_H_
