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

#ifndef LEGALSEQ_NER_SPANS_H_
#define LEGALSEQ_NER_SPANS_H_

#include <utility>
#include <vector>

#include "legalseq/base/rng.h"

namespace legalseq::ner {

// Class index of "no entity" in span classifiers; entity label k is k + 1.
inline constexpr int kNone = 0;

// Tokens [start, end] of one sequence (end inclusive). positions are the
// 1-based word positions the span covers.
struct SpanCandidate {
  int start = 0;
  int end = 0;
  std::vector<int> positions;

  int width() const { return end - start + 1; }
  bool operator==(const SpanCandidate &o) const { return start == o.start && end == o.end; }
  bool operator<(const SpanCandidate &o) const {
    return start != o.start ? start < o.start : end < o.end;
  }
};

SpanCandidate MakeSpan(int start, int end);

// Every span of width <= max_width over n tokens, by width and then start:
// n = 3, max_width = 2 gives (0,0) (1,1) (2,2) (0,1) (1,2).
std::vector<SpanCandidate> EnumerateSpans(int n, int max_width);

struct SpanPrediction {
  SpanCandidate span;
  int label = kNone;  // class index
  double score = 0.0;
};

// Drops NONE predictions, then keeps spans greedily by descending score
// (ties: earlier start, then shorter width) unless they overlap a kept
// span. The result is sorted by start.
std::vector<SpanPrediction> ResolveOverlaps(std::vector<SpanPrediction> predictions);

// Token ranges [begin, end) of at most max_len tokens starting every
// `stride` tokens until the sequence is covered.
std::vector<std::pair<int, int>> Windows(int n, int max_len, int stride);

// Up to `count` distinct candidates that are not in `gold`, drawn uniformly
// without replacement, returned in enumeration order.
std::vector<SpanCandidate> SampleNegatives(const std::vector<SpanCandidate> &candidates,
                                           const std::vector<SpanCandidate> &gold, size_t count,
                                           Rng &rng);

}  // namespace legalseq::ner

#endif  // LEGALSEQ_NER_SPANS_H_
