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

#ifndef LEGALSEQ_TRAIN_TRAIN_H_
#define LEGALSEQ_TRAIN_TRAIN_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "legalseq/base/config.h"
#include "legalseq/base/rng.h"
#include "legalseq/nn/graph.h"
#include "legalseq/train/history.h"

namespace legalseq::train {

struct TrainConfig {
  int batch_size = 16;
  int epochs = 10;
  double peak_lr = 1e-4;
  // Peak rate of the "encoder" parameter group; peak_lr when unset.
  std::optional<double> encoder_lr;
  double warmup_ratio = 0.0;
  double weight_decay = 0.01;
  uint64_t seed = 42;
  // Global L2 norm bound; unset disables clipping.
  std::optional<double> grad_clip_norm = 1.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
  // Keys under "train.".
  static TrainConfig FromConfig(const Config &config);
  Config ToConfig() const;
};

// ceil(warmup_ratio * total_steps).
int WarmupSteps(int total_steps, double warmup_ratio);

// Linear warm-up from 0 to peak over WarmupSteps steps, then linear decay
// to 0 at total_steps. With no warm-up, step 0 has the peak rate.
double LrAt(int step, int total_steps, double peak_lr, double warmup_ratio);
double LrAt(int step, int total_steps, const TrainConfig &config);

// Independent streams derived from one seed.
struct Seeds {
  uint64_t init = 0;
  uint64_t dropout = 0;
  uint64_t shuffle = 0;
  uint64_t sampling = 0;
  uint64_t augmentation = 0;

  static Seeds From(uint64_t seed);
};

// Adam moments with weight decay applied straight to the weights:
//   w <- w - lr * wd * w  (decaying parameters only)
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   w <- w - lr * m_hat / (sqrt(v_hat) + eps)
// Frozen parameters are skipped.
class AdamW {
 public:
  AdamW(std::vector<nn::Parameter *> params, double beta1, double beta2, double epsilon,
        double weight_decay);

  // `lr_for` maps a parameter group to its rate for this step.
  void Step(const std::function<double(const std::string &group)> &lr_for);
  int steps() const { return steps_; }

 private:
  std::vector<nn::Parameter *> params_;
  double beta1_, beta2_, epsilon_, weight_decay_;
  int steps_ = 0;
};

// Rescales gradients of trainable parameters so their global L2 norm is at
// most max_norm. Returns the norm before clipping.
double ClipGradients(const std::vector<nn::Parameter *> &params, double max_norm);

// What the loop trains.
class TrainTask {
 public:
  virtual ~TrainTask() = default;
  virtual std::vector<nn::Parameter *> Parameters() = 0;
  virtual size_t NumExamples() const = 0;
  // Loss of one training example; `sampler` drives any per-step sampling.
  virtual nn::Var ExampleLoss(nn::Graph &g, size_t index, Rng &sampler) = 0;
  // Validation metric; larger is better.
  virtual double Validate() = 0;
  virtual void Save(const std::filesystem::path &path) = 0;
};

struct TrainOutcome {
  TrainHistory history;
  std::filesystem::path best_checkpoint;  // empty when nothing was saved
  int checkpoints_written = 0;
};

using Logger = std::function<void(const std::string &)>;

// Runs the epoch loop: shuffled batches, summed batch loss, clipping,
// AdamW under the schedule, one validation per epoch, best.ckpt written on
// strict improvement and history.csv rewritten after every epoch under
// out_dir. A non-finite loss or a failed checkpoint write raises
// TrainingAborted after the partial history is written.
TrainOutcome Train(TrainTask &task, const TrainConfig &config,
                   const std::filesystem::path &out_dir, const Logger &log = nullptr);

}  // namespace legalseq::train

#endif  // LEGALSEQ_TRAIN_TRAIN_H_
