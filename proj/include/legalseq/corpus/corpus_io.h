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

#ifndef LEGALSEQ_CORPUS_CORPUS_IO_H_
#define LEGALSEQ_CORPUS_CORPUS_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "legalseq/corpus/document.h"
#include "legalseq/corpus/labels.h"

namespace legalseq {

struct RrCorpus {
  CorpusFormat format = CorpusFormat::kTaskNested;
  std::vector<Document> documents;
};

struct NerCorpus {
  CorpusFormat format = CorpusFormat::kTaskNested;
  std::vector<NerDocument> documents;
};

// Loads a rhetorical-role corpus. Sentences are validated against the raw
// text (which is never rewritten) and returned sorted by offset. Unlabeled
// annotations (no label given) are kept with an empty rr_label.
//
// Errors: ParseError (malformed JSON, with byte position), IntegrityError
// (offsets out of range, overlapping sentences, surface mismatch; names the
// document), LabelError (lists every unknown label string).
RrCorpus LoadRrCorpus(const std::filesystem::path &path, const LabelSet &labels);
RrCorpus ParseRrCorpus(const std::string &json_text, const LabelSet &labels,
                       const std::string &origin = "<memory>");

// Loads an entity corpus; overlapping gold spans raise OverlapError naming
// both spans.
NerCorpus LoadNerCorpus(const std::filesystem::path &path,
                        const LabelSet &labels);
NerCorpus ParseNerCorpus(const std::string &json_text, const LabelSet &labels,
                         const std::string &origin = "<memory>");

// Serialization in the given layout. Output is deterministic: equal inputs
// give byte-identical text.
std::string SerializeRrCorpus(const RrCorpus &corpus, const LabelSet &labels);
std::string SerializeNerCorpus(const NerCorpus &corpus, const LabelSet &labels);

void WriteTextFile(const std::filesystem::path &path, const std::string &text);
std::string ReadTextFile(const std::filesystem::path &path);

}  // namespace legalseq

#endif  // LEGALSEQ_CORPUS_CORPUS_IO_H_
