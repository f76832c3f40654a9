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

#include "legalseq/ner/spans.h"

#include <algorithm>
#include <set>

#include "legalseq/base/errors.h"

namespace legalseq::ner {

SpanCandidate MakeSpan(int start, int end) {
  if (start < 0 || end < start) throw ContractError("invalid span bounds");
  SpanCandidate s{start, end, {}};
  for (int p = start; p <= end; ++p) s.positions.push_back(p + 1);
  return s;
}

std::vector<SpanCandidate> EnumerateSpans(int n, int max_width) {
  if (n < 1 || max_width < 1) throw ContractError("EnumerateSpans needs n >= 1 and max_width >= 1");
  std::vector<SpanCandidate> out;
  for (int w = 1; w <= std::min(n, max_width); ++w) {
    for (int s = 0; s + w <= n; ++s) out.push_back(MakeSpan(s, s + w - 1));
  }
  return out;
}

std::vector<SpanPrediction> ResolveOverlaps(std::vector<SpanPrediction> predictions) {
  predictions.erase(std::remove_if(predictions.begin(), predictions.end(),
                                   [](const SpanPrediction &p) { return p.label == kNone; }),
                    predictions.end());
  std::stable_sort(predictions.begin(), predictions.end(),
                   [](const SpanPrediction &a, const SpanPrediction &b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.span.start != b.span.start) return a.span.start < b.span.start;
                     return a.span.width() < b.span.width();
                   });
  std::vector<SpanPrediction> kept;
  for (const auto &p : predictions) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const SpanPrediction &k) {
      return p.span.start <= k.span.end && k.span.start <= p.span.end;
    });
    if (!clash) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const SpanPrediction &a, const SpanPrediction &b) {
    return a.span < b.span;
  });
  return kept;
}

std::vector<std::pair<int, int>> Windows(int n, int max_len, int stride) {
  if (max_len < 1 || stride < 1 || stride > max_len) {
    throw ContractError("windowing needs 1 <= stride <= max_len");
  }
  std::vector<std::pair<int, int>> out;
  if (n <= max_len) {
    out.emplace_back(0, n);
    return out;
  }
  for (int b = 0;; b += stride) {
    const int e = std::min(n, b + max_len);
    out.emplace_back(b, e);
    if (e == n) break;
  }
  return out;
}

std::vector<SpanCandidate> SampleNegatives(const std::vector<SpanCandidate> &candidates,
                                           const std::vector<SpanCandidate> &gold, size_t count,
                                           Rng &rng) {
  const std::set<SpanCandidate> taken(gold.begin(), gold.end());
  std::vector<size_t> pool;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!taken.count(candidates[i])) pool.push_back(i);
  }
  count = std::min(count, pool.size());
  // Partial Fisher-Yates.
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + rng.UniformInt(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  std::vector<SpanCandidate> out;
  out.reserve(count);
  for (size_t i : pool) out.push_back(candidates[i]);
  return out;
}

}  // namespace legalseq::ner
