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

#include "legalseq/eval/metrics.h"

#include <set>

#include "legalseq/base/errors.h"

namespace legalseq::eval {
namespace {

void SameLength(const std::vector<int> &gold, const std::vector<int> &pred) {
  if (gold.size() != pred.size()) {
    throw ContractError("gold has " + std::to_string(gold.size()) + " items, prediction " +
                        std::to_string(pred.size()));
  }
}

double Ratio(long num, long den) { return den == 0 ? 0.0 : static_cast<double>(num) / den; }

}  // namespace

double F1FromCounts(const Counts &c) {
  const long den = 2 * c.tp + c.fp + c.fn;
  return den == 0 ? 1.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(den);
}

Counts PooledCounts(const std::vector<int> &gold, const std::vector<int> &pred,
                    std::optional<int> exclude) {
  SameLength(gold, pred);
  Counts c;
  for (size_t i = 0; i < gold.size(); ++i) {
    const int g = gold[i], p = pred[i];
    if (g == p) {
      if (g != exclude) ++c.tp;
      continue;
    }
    if (p != exclude) ++c.fp;
    if (g != exclude) ++c.fn;
  }
  return c;
}

double MicroF1(const std::vector<int> &gold, const std::vector<int> &pred,
               std::optional<int> exclude) {
  return F1FromCounts(PooledCounts(gold, pred, exclude));
}

std::vector<ClassScores> PerClass(const std::vector<int> &gold, const std::vector<int> &pred,
                                  const LabelSet &labels) {
  SameLength(gold, pred);
  std::vector<ClassScores> out(static_cast<size_t>(labels.size()));
  for (int k = 0; k < labels.size(); ++k) out[static_cast<size_t>(k)].label = labels.name(k);
  auto at = [&](int k) -> ClassScores & {
    if (!labels.Contains(k)) throw ContractError("label index out of range");
    return out[static_cast<size_t>(k)];
  };
  for (size_t i = 0; i < gold.size(); ++i) {
    at(gold[i]).support++;
    if (gold[i] == pred[i]) {
      at(gold[i]).counts.tp++;
    } else {
      at(pred[i]).counts.fp++;
      at(gold[i]).counts.fn++;
    }
  }
  for (auto &c : out) {
    c.precision = Ratio(c.counts.tp, c.counts.tp + c.counts.fp);
    c.recall = Ratio(c.counts.tp, c.counts.tp + c.counts.fn);
    c.f1 = c.precision + c.recall == 0.0 ? 0.0
                                         : 2 * c.precision * c.recall / (c.precision + c.recall);
  }
  return out;
}

double MacroF1(const std::vector<ClassScores> &classes) {
  double sum = 0.0;
  int n = 0;
  for (const auto &c : classes) {
    if (c.support == 0 && c.counts.fp == 0) continue;
    sum += c.f1;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

bool SpanKey::operator<(const SpanKey &o) const {
  if (doc_id != o.doc_id) return doc_id < o.doc_id;
  if (start != o.start) return start < o.start;
  if (end != o.end) return end < o.end;
  return label < o.label;
}

bool SpanKey::operator==(const SpanKey &o) const {
  return doc_id == o.doc_id && start == o.start && end == o.end && label == o.label;
}

SpanMatchReport SpanF1(const std::vector<SpanKey> &gold, const std::vector<SpanKey> &pred) {
  const std::set<SpanKey> g(gold.begin(), gold.end()), p(pred.begin(), pred.end());
  SpanMatchReport r;
  for (const auto &k : p) {
    if (g.count(k)) {
      ++r.true_positives;
    } else {
      ++r.false_positives;
    }
  }
  r.false_negatives = static_cast<long>(g.size()) - r.true_positives;
  if (g.empty() && p.empty()) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  r.precision = Ratio(r.true_positives, r.true_positives + r.false_positives);
  r.recall = Ratio(r.true_positives, r.true_positives + r.false_negatives);
  r.f1 = r.precision + r.recall == 0.0 ? 0.0
                                       : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::vector<SpanKey> SpanKeys(const std::vector<NerDocument> &docs) {
  std::vector<SpanKey> out;
  for (const auto &d : docs) {
    for (const auto &s : d.spans) out.push_back({d.doc_id, s.start_char, s.end_char, s.label});
  }
  return out;
}

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto &row : counts) {
    for (long v : row) t += v;
  }
  return t;
}

std::vector<std::vector<double>> ConfusionMatrix::RowNormalized() const {
  std::vector<std::vector<double>> out;
  for (const auto &row : counts) {
    long sum = 0;
    for (long v : row) sum += v;
    std::vector<double> r(row.size(), 0.0);
    for (size_t j = 0; j < row.size(); ++j) r[j] = Ratio(row[j], sum);
    out.push_back(std::move(r));
  }
  return out;
}

double ConfusionMatrix::MicroF1() const {
  Counts c;
  for (size_t i = 0; i < counts.size(); ++i) {
    for (size_t j = 0; j < counts[i].size(); ++j) {
      if (i == j) {
        c.tp += counts[i][j];
      } else {
        c.fp += counts[i][j];
        c.fn += counts[i][j];
      }
    }
  }
  return F1FromCounts(c);
}

ConfusionMatrix Confusion(const std::vector<int> &gold, const std::vector<int> &pred,
                          const LabelSet &labels) {
  SameLength(gold, pred);
  ConfusionMatrix m;
  m.labels = labels.names();
  const size_t k = static_cast<size_t>(labels.size());
  m.counts.assign(k, std::vector<long>(k, 0));
  for (size_t i = 0; i < gold.size(); ++i) {
    if (!labels.Contains(gold[i]) || !labels.Contains(pred[i])) {
      throw ContractError("label index out of range");
    }
    m.counts[static_cast<size_t>(gold[i])][static_cast<size_t>(pred[i])]++;
  }
  return m;
}

}  // namespace legalseq::eval
