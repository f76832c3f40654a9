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

#ifndef LEGALSEQ_EVAL_METRICS_H_
#define LEGALSEQ_EVAL_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "legalseq/corpus/document.h"
#include "legalseq/corpus/labels.h"

namespace legalseq::eval {

struct Counts {
  long tp = 0, fp = 0, fn = 0;
};

// 2TP / (2TP + FP + FN); 1 when the denominator is zero (nothing to find,
// nothing predicted).
double F1FromCounts(const Counts &c);

// Pooled per-class counts over single-label items. With `exclude`, that
// class contributes no true positives, false positives or false negatives.
Counts PooledCounts(const std::vector<int> &gold, const std::vector<int> &pred,
                    std::optional<int> exclude = std::nullopt);

double MicroF1(const std::vector<int> &gold, const std::vector<int> &pred,
               std::optional<int> exclude = std::nullopt);

struct ClassScores {
  std::string label;
  long support = 0;
  Counts counts;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Per-class precision, recall and F1 (0 when undefined).
std::vector<ClassScores> PerClass(const std::vector<int> &gold, const std::vector<int> &pred,
                                  const LabelSet &labels);

// Macro average of the per-class F1 values over classes that occur in gold
// or predictions.
double MacroF1(const std::vector<ClassScores> &classes);

struct SpanKey {
  std::string doc_id;
  int start = 0;
  int end = 0;
  int label = 0;
  bool operator<(const SpanKey &o) const;
  bool operator==(const SpanKey &o) const;
};

struct SpanMatchReport {
  long true_positives = 0, false_positives = 0, false_negatives = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Strict match on (doc, start, end, label). Duplicate keys count once.
// P = TP/(TP+FP) and R = TP/(TP+FN), each 0 when undefined; F1 is 0 when
// P + R = 0. Two empty sets score 1.
SpanMatchReport SpanF1(const std::vector<SpanKey> &gold, const std::vector<SpanKey> &pred);

std::vector<SpanKey> SpanKeys(const std::vector<NerDocument> &docs);

struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<long>> counts;  // rows gold, columns predicted

  long total() const;
  // Each row divided by its sum; rows without gold items stay zero.
  std::vector<std::vector<double>> RowNormalized() const;
  // Micro F1 recomputed from the matrix.
  double MicroF1() const;
};

ConfusionMatrix Confusion(const std::vector<int> &gold, const std::vector<int> &pred,
                          const LabelSet &labels);

}  // namespace legalseq::eval

#endif  // LEGALSEQ_EVAL_METRICS_H_
