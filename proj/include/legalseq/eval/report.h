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

#ifndef LEGALSEQ_EVAL_REPORT_H_
#define LEGALSEQ_EVAL_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legalseq/corpus/stats.h"
#include "legalseq/eval/metrics.h"
#include "legalseq/train/history.h"

namespace legalseq::eval {

// One run of a hyperparameter grid.
struct GridCell {
  double lr = 0.0;
  int batch_size = 0;
  double metric = 0.0;
};

struct ReportInputs {
  std::optional<train::TrainHistory> history;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<ClassScores> per_class;
  std::optional<ConfusionMatrix> confusion;
  std::optional<CorpusStats> stats;
  std::vector<GridCell> grid;
};

// Output layout under out_dir:
//   metrics.csv          metric,value (+ per-class rows)
//   confusion.csv        counts, rows gold, columns predicted
//   history.csv          epoch,train_loss,val_metric,lr
//   figures/confusion_normalized.{csv,svg}
//   figures/class_distribution.{csv,svg}
//   figures/sentence_lengths.{csv,svg}
//   figures/metric_curve.{csv,svg}
//   figures/grid.{csv,svg}
// Only the parts whose inputs are present are written. Throws IoError when
// the directory cannot be written. Returns the files written.
std::vector<std::filesystem::path> EmitReport(const ReportInputs &inputs,
                                              const std::filesystem::path &out_dir);

std::string MetricsCsv(const std::vector<std::pair<std::string, double>> &metrics,
                       const std::vector<ClassScores> &per_class);
std::string ConfusionCsv(const ConfusionMatrix &m);
std::string NormalizedConfusionCsv(const ConfusionMatrix &m);
std::string ClassDistributionCsv(const CorpusStats &stats);
std::string SentenceLengthCsv(const CorpusStats &stats);
std::string MetricCurveCsv(const train::TrainHistory &history);
std::string GridCsv(const std::vector<GridCell> &grid);

// Quotes a CSV field when needed.
std::string CsvField(const std::string &s);

}  // namespace legalseq::eval

#endif  // LEGALSEQ_EVAL_REPORT_H_
