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

#ifndef LEGALSEQ_CORPUS_STATS_H_
#define LEGALSEQ_CORPUS_STATS_H_

#include <map>
#include <string>
#include <vector>

#include "legalseq/corpus/document.h"
#include "legalseq/corpus/labels.h"

namespace legalseq {

// Sentences below this many reference tokens are counted as short.
constexpr int kShortSentenceTokens = 20;

struct CorpusStats {
  // Bucket lower bound (token count rounded down to bucket_width) -> count.
  std::map<int, int> sentence_length_histogram;
  int bucket_width = 1;
  // Every label of the label set appears, with zero counts included.
  std::vector<std::pair<std::string, int>> class_counts;
  int doc_count = 0;
  int sentence_count = 0;
  int labeled_sentence_count = 0;
  int short_sentence_count = 0;
};

CorpusStats ComputeStats(const std::vector<Document> &documents,
                         const LabelSet &labels, int bucket_width = 1);

// Entity corpora: each record counts as a "sentence" and class counts are
// entity counts.
CorpusStats ComputeStats(const std::vector<NerDocument> &documents,
                         const LabelSet &labels, int bucket_width = 1);

}  // namespace legalseq

#endif  // LEGALSEQ_CORPUS_STATS_H_
