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

#ifndef LEGALSEQ_CORPUS_SYNTHETIC_H_
#define LEGALSEQ_CORPUS_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "legalseq/corpus/document.h"
#include "legalseq/corpus/labels.h"

namespace legalseq {

// Small generated corpora for smoke tests and the tiny presets. Every class
// owns a few cue words, so labels are learnable from the sentence alone.
// Text is ASCII; sentences are separated by a single space.
struct SyntheticRrOptions {
  int documents = 20;
  int sentences = 8;
  int classes = 4;  // uses the first `classes` labels of the label set
  int min_words = 6;
  int max_words = 12;
  uint64_t seed = 42;
};

std::vector<Document> SyntheticRrDocuments(const SyntheticRrOptions &options,
                                           const LabelSet &labels);

struct SyntheticNerOptions {
  int sentences = 50;  // one record per sentence
  int types = 3;       // uses the first `types` labels of the label set
  uint64_t seed = 42;
};

std::vector<NerDocument> SyntheticNerDocuments(const SyntheticNerOptions &options,
                                               const LabelSet &labels);

}  // namespace legalseq

#endif  // LEGALSEQ_CORPUS_SYNTHETIC_H_
