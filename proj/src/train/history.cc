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

#include "legalseq/train/history.h"

#include "legalseq/base/config.h"
#include "legalseq/corpus/corpus_io.h"

namespace legalseq::train {

bool TrainHistory::Add(const EpochRecord &record) {
  epochs.push_back(record);
  if (record.metric > best_metric) {
    best_metric = record.metric;
    best_epoch = record.epoch;
    return true;
  }
  return false;
}

std::string TrainHistory::ToCsv() const {
  std::string out = "epoch,train_loss,val_metric,lr\n";
  for (const auto &e : epochs) {
    out += std::to_string(e.epoch) + "," + FormatDouble(e.train_loss) + "," +
           FormatDouble(e.metric) + "," + FormatDouble(e.lr) + "\n";
  }
  return out;
}

void TrainHistory::WriteCsv(const std::filesystem::path &path) const {
  WriteTextFile(path, ToCsv());
}

}  // namespace legalseq::train
