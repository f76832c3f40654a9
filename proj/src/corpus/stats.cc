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

#include "legalseq/corpus/stats.h"

#include "legalseq/base/errors.h"

namespace legalseq {
namespace {

void AddLength(CorpusStats &stats, int tokens) {
  const int bucket = (tokens / stats.bucket_width) * stats.bucket_width;
  ++stats.sentence_length_histogram[bucket];
  ++stats.sentence_count;
  if (tokens < kShortSentenceTokens) ++stats.short_sentence_count;
}

}  // namespace

CorpusStats ComputeStats(const std::vector<Document> &documents,
                         const LabelSet &labels, int bucket_width) {
  if (bucket_width < 1) throw ContractError("bucket width must be positive");
  CorpusStats stats;
  stats.bucket_width = bucket_width;
  std::vector<int> counts(static_cast<size_t>(labels.size()), 0);
  for (const Document &doc : documents) {
    ++stats.doc_count;
    for (const SentenceSpan &s : doc.sentences) {
      AddLength(stats, static_cast<int>(TokenizeSentence(s).size()));
      if (s.rr_label) {
        ++counts.at(static_cast<size_t>(*s.rr_label));
        ++stats.labeled_sentence_count;
      }
    }
  }
  for (int i = 0; i < labels.size(); ++i) {
    stats.class_counts.emplace_back(labels.name(i), counts[static_cast<size_t>(i)]);
  }
  return stats;
}

CorpusStats ComputeStats(const std::vector<NerDocument> &documents,
                         const LabelSet &labels, int bucket_width) {
  if (bucket_width < 1) throw ContractError("bucket width must be positive");
  CorpusStats stats;
  stats.bucket_width = bucket_width;
  std::vector<int> counts(static_cast<size_t>(labels.size()), 0);
  for (const NerDocument &doc : documents) {
    ++stats.doc_count;
    AddLength(stats, static_cast<int>(Tokenize(doc.text).size()));
    for (const EntitySpan &s : doc.spans) {
      ++counts.at(static_cast<size_t>(s.label));
      ++stats.labeled_sentence_count;
    }
  }
  for (int i = 0; i < labels.size(); ++i) {
    stats.class_counts.emplace_back(labels.name(i), counts[static_cast<size_t>(i)]);
  }
  return stats;
}

}  // namespace legalseq
