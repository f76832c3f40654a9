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

#ifndef LEGALSEQ_CORPUS_DOCUMENT_H_
#define LEGALSEQ_CORPUS_DOCUMENT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace legalseq {

// All offsets are code-point indices into the original document text, end
// exclusive.

struct SentenceSpan {
  int start_char = 0;
  int end_char = 0;
  std::string surface;
  std::optional<int> rr_label;
};

// How a corpus file laid out its records; predictions are written back in
// the same layout.
enum class CorpusFormat {
  // [{"id", "data": {"text"}, "annotations": [{"result": [{"value": {...}}]}]}]
  kTaskNested,
  // [{"id", "text", "annotations": [{"start", "end", "label"}]}]
  kFlat,
};

// A judgment as an ordered, non-overlapping sequence of sentences. The text
// is stored exactly as read, empty lines included.
struct Document {
  std::string doc_id;
  bool numeric_id = false;
  std::string text;
  std::vector<SentenceSpan> sentences;
};

struct EntitySpan {
  int start_char = 0;
  int end_char = 0;
  int label = 0;
  std::string surface;

  bool operator==(const EntitySpan &o) const {
    return start_char == o.start_char && end_char == o.end_char &&
           label == o.label;
  }
};

// One NER record: a text with its entity annotations, sorted by offset.
struct NerDocument {
  std::string doc_id;
  bool numeric_id = false;
  std::string text;
  std::vector<EntitySpan> spans;
};

struct Token {
  std::string surface;
  int start_char = 0;
  int end_char = 0;
};

// Reference tokenizer: maximal runs of word characters form one token, every
// punctuation character is a token of its own, whitespace separates. Offsets
// are relative to `text` plus `base_offset`.
std::vector<Token> Tokenize(std::string_view text, int base_offset = 0);

// Tokens of one sentence of a document, with document-level offsets.
std::vector<Token> TokenizeSentence(const SentenceSpan &sentence);

std::vector<std::string> Surfaces(const std::vector<Token> &tokens);

}  // namespace legalseq

#endif  // LEGALSEQ_CORPUS_DOCUMENT_H_
