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

#ifndef LEGALSEQ_TRAIN_TASKS_H_
#define LEGALSEQ_TRAIN_TASKS_H_

#include <optional>
#include <vector>

#include "legalseq/hsln/hsln.h"
#include "legalseq/ner/ner_model.h"
#include "legalseq/train/train.h"

namespace legalseq::train {

// Sentence labels of every document, gold and predicted, concatenated in
// document order.
struct RrPredictions {
  std::vector<int> gold;
  std::vector<int> pred;
  std::vector<std::vector<int>> per_document;
};

RrPredictions PredictRr(const hsln::RrModel &model, const std::vector<Document> &docs);

// Documents carrying predicted spans instead of gold ones.
std::vector<NerDocument> PredictNer(const ner::NerModel &model,
                                    const std::vector<NerDocument> &docs);

// Rhetorical roles; the validation metric is sentence micro F1.
class RrTrainTask : public TrainTask {
 public:
  RrTrainTask(hsln::RrModel &model, const std::vector<Document> &train,
              std::vector<Document> validation, std::optional<int> exclude_class = std::nullopt);

  std::vector<nn::Parameter *> Parameters() override { return model_.store().All(); }
  size_t NumExamples() const override { return inputs_.size(); }
  nn::Var ExampleLoss(nn::Graph &g, size_t index, Rng &sampler) override;
  double Validate() override;
  void Save(const std::filesystem::path &path) override { model_.Save(path); }

 private:
  hsln::RrModel &model_;
  std::vector<hsln::DocumentInput> inputs_;
  std::vector<std::vector<int>> gold_;
  std::vector<Document> validation_;
  std::vector<hsln::DocumentInput> val_inputs_;
  std::optional<int> exclude_;
};

// Entities; every document window is one example and the validation
// metric is strict span F1.
class NerTrainTask : public TrainTask {
 public:
  NerTrainTask(ner::NerModel &model, const std::vector<NerDocument> &train,
               std::vector<NerDocument> validation);

  std::vector<nn::Parameter *> Parameters() override { return model_.store().All(); }
  size_t NumExamples() const override { return windows_.size(); }
  nn::Var ExampleLoss(nn::Graph &g, size_t index, Rng &sampler) override;
  double Validate() override;
  void Save(const std::filesystem::path &path) override { model_.Save(path); }

 private:
  ner::NerModel &model_;
  std::vector<ner::NerWindow> windows_;
  std::vector<NerDocument> validation_;
  std::vector<ner::NerExample> val_examples_;
};

}  // namespace legalseq::train

#endif  // LEGALSEQ_TRAIN_TASKS_H_
