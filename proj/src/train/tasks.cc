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

#include "legalseq/train/tasks.h"

#include "legalseq/eval/metrics.h"

namespace legalseq::train {

RrPredictions PredictRr(const hsln::RrModel &model, const std::vector<Document> &docs) {
  RrPredictions out;
  for (const auto &d : docs) {
    if (d.sentences.empty()) {
      out.per_document.emplace_back();
      continue;
    }
    std::vector<int> pred = model.Predict(model.Prepare(d));
    for (size_t i = 0; i < d.sentences.size(); ++i) {
      if (!d.sentences[i].rr_label) continue;
      out.gold.push_back(*d.sentences[i].rr_label);
      out.pred.push_back(pred[i]);
    }
    out.per_document.push_back(std::move(pred));
  }
  return out;
}

std::vector<NerDocument> PredictNer(const ner::NerModel &model,
                                    const std::vector<NerDocument> &docs) {
  std::vector<NerDocument> out;
  out.reserve(docs.size());
  for (const auto &d : docs) {
    NerDocument p = d;
    p.spans = model.Predict(model.Prepare(d), d.text);
    out.push_back(std::move(p));
  }
  return out;
}

RrTrainTask::RrTrainTask(hsln::RrModel &model, const std::vector<Document> &train,
                         std::vector<Document> validation, std::optional<int> exclude_class)
    : model_(model), validation_(std::move(validation)), exclude_(exclude_class) {
  for (const auto &d : train) {
    if (d.sentences.empty()) continue;
    gold_.push_back(hsln::GoldLabels(d));
    inputs_.push_back(model_.Prepare(d));
  }
  for (const auto &d : validation_) val_inputs_.push_back(model_.Prepare(d));
}

nn::Var RrTrainTask::ExampleLoss(nn::Graph &g, size_t index, Rng &) {
  return model_.Loss(g, inputs_.at(index), gold_.at(index));
}

double RrTrainTask::Validate() {
  std::vector<int> gold, pred;
  for (size_t k = 0; k < validation_.size(); ++k) {
    const auto &d = validation_[k];
    const std::vector<int> p = model_.Predict(val_inputs_[k]);
    for (size_t i = 0; i < d.sentences.size(); ++i) {
      if (!d.sentences[i].rr_label) continue;
      gold.push_back(*d.sentences[i].rr_label);
      pred.push_back(p[i]);
    }
  }
  return eval::MicroF1(gold, pred, exclude_);
}

NerTrainTask::NerTrainTask(ner::NerModel &model, const std::vector<NerDocument> &train,
                           std::vector<NerDocument> validation)
    : model_(model), validation_(std::move(validation)) {
  for (const auto &d : train) {
    for (auto &w : model_.Prepare(d).windows) windows_.push_back(std::move(w));
  }
  for (const auto &d : validation_) val_examples_.push_back(model_.Prepare(d));
}

nn::Var NerTrainTask::ExampleLoss(nn::Graph &g, size_t index, Rng &sampler) {
  return model_.Loss(g, windows_.at(index), &sampler);
}

double NerTrainTask::Validate() {
  std::vector<NerDocument> pred;
  for (size_t k = 0; k < validation_.size(); ++k) {
    NerDocument p = validation_[k];
    p.spans = model_.Predict(val_examples_[k], p.text);
    pred.push_back(std::move(p));
  }
  return eval::SpanF1(eval::SpanKeys(validation_), eval::SpanKeys(pred)).f1;
}

}  // namespace legalseq::train
