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

#ifndef LEGALSEQ_TRAIN_HISTORY_H_
#define LEGALSEQ_TRAIN_HISTORY_H_

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace legalseq::train {

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double metric = 0.0;
  double lr = 0.0;  // rate of the epoch's last update
  double wall_seconds = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;  // 0 before any epoch
  double best_metric = -std::numeric_limits<double>::infinity();

  // Records an epoch; returns true when its metric strictly beats every
  // earlier one.
  bool Add(const EpochRecord &record);

  // "epoch,train_loss,val_metric,lr" rows. Wall time is left out so that
  // equal seeds give byte-identical files.
  std::string ToCsv() const;
  void WriteCsv(const std::filesystem::path &path) const;
};

}  // namespace legalseq::train

#endif  // LEGALSEQ_TRAIN_HISTORY_H_
