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

#include "legalseq/train/train.h"

#include <chrono>
#include <cmath>
#include <numeric>

#include "legalseq/base/errors.h"

namespace legalseq::train {

void TrainConfig::Validate() const {
  if (batch_size < 1) throw ConfigError("train.batch_size must be at least 1");
  if (epochs < 0) throw ConfigError("train.epochs must be non-negative");
  if (!(peak_lr >= 0.0) || !std::isfinite(peak_lr)) throw ConfigError("train.lr must be >= 0");
  if (encoder_lr && (!(*encoder_lr >= 0.0) || !std::isfinite(*encoder_lr))) {
    throw ConfigError("train.encoder_lr must be >= 0");
  }
  if (!(warmup_ratio >= 0.0 && warmup_ratio < 1.0)) {
    throw ConfigError("train.warmup_ratio must lie in [0, 1)");
  }
  if (!(weight_decay >= 0.0)) throw ConfigError("train.weight_decay must be >= 0");
  if (grad_clip_norm && !(*grad_clip_norm > 0.0)) {
    throw ConfigError("train.grad_clip must be positive (or 0 to disable)");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0)) {
    throw ConfigError("invalid AdamW moments configuration");
  }
}

TrainConfig TrainConfig::FromConfig(const Config &c) {
  TrainConfig t;
  t.batch_size = static_cast<int>(c.GetInt("train.batch_size", t.batch_size));
  t.epochs = static_cast<int>(c.GetInt("train.epochs", t.epochs));
  t.peak_lr = c.GetDouble("train.lr", t.peak_lr);
  t.encoder_lr = c.GetOptionalDouble("train.encoder_lr");
  t.warmup_ratio = c.GetDouble("train.warmup_ratio", t.warmup_ratio);
  t.weight_decay = c.GetDouble("train.weight_decay", t.weight_decay);
  const long seed = c.GetInt("train.seed", static_cast<long>(t.seed));
  if (seed < 0) throw ConfigError("train.seed must be non-negative");
  t.seed = static_cast<uint64_t>(seed);
  const double clip = c.GetDouble("train.grad_clip", *t.grad_clip_norm);
  t.grad_clip_norm = clip == 0.0 ? std::nullopt : std::optional<double>(clip);
  t.beta1 = c.GetDouble("train.beta1", t.beta1);
  t.beta2 = c.GetDouble("train.beta2", t.beta2);
  t.epsilon = c.GetDouble("train.epsilon", t.epsilon);
  t.Validate();
  return t;
}

Config TrainConfig::ToConfig() const {
  Config c;
  c.Set("train.batch_size", std::to_string(batch_size));
  c.Set("train.epochs", std::to_string(epochs));
  c.Set("train.lr", FormatDouble(peak_lr));
  if (encoder_lr) c.Set("train.encoder_lr", FormatDouble(*encoder_lr));
  c.Set("train.warmup_ratio", FormatDouble(warmup_ratio));
  c.Set("train.weight_decay", FormatDouble(weight_decay));
  c.Set("train.seed", std::to_string(seed));
  c.Set("train.grad_clip", FormatDouble(grad_clip_norm.value_or(0.0)));
  c.Set("train.beta1", FormatDouble(beta1));
  c.Set("train.beta2", FormatDouble(beta2));
  c.Set("train.epsilon", FormatDouble(epsilon));
  return c;
}

int WarmupSteps(int total_steps, double warmup_ratio) {
  return static_cast<int>(std::ceil(warmup_ratio * static_cast<double>(total_steps)));
}

double LrAt(int step, int total_steps, double peak_lr, double warmup_ratio) {
  if (total_steps < 1 || step < 0 || step > total_steps) {
    throw ContractError("LrAt needs 0 <= step <= total_steps and total_steps >= 1");
  }
  const int warm = WarmupSteps(total_steps, warmup_ratio);
  if (step < warm) return peak_lr * static_cast<double>(step) / static_cast<double>(warm);
  if (warm >= total_steps) return 0.0;  // step == total_steps
  return peak_lr * static_cast<double>(total_steps - step) /
         static_cast<double>(total_steps - warm);
}

double LrAt(int step, int total_steps, const TrainConfig &config) {
  return LrAt(step, total_steps, config.peak_lr, config.warmup_ratio);
}

Seeds Seeds::From(uint64_t seed) {
  Seeds s;
  s.init = SplitMix64(seed ^ 0x1001);
  s.dropout = SplitMix64(seed ^ 0x2002);
  s.shuffle = SplitMix64(seed ^ 0x3003);
  s.sampling = SplitMix64(seed ^ 0x4004);
  s.augmentation = SplitMix64(seed ^ 0x5005);
  return s;
}

AdamW::AdamW(std::vector<nn::Parameter *> params, double beta1, double beta2, double epsilon,
             double weight_decay)
    : params_(std::move(params)),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      weight_decay_(weight_decay) {}

void AdamW::Step(const std::function<double(const std::string &)> &lr_for) {
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, steps_);
  const double c2 = 1.0 - std::pow(beta2_, steps_);
  for (nn::Parameter *p : params_) {
    if (p->frozen()) continue;
    const double lr = lr_for(p->group());
    nn::Matrix &w = p->value();
    const nn::Matrix &g = p->grad();
    if (p->moment1.size() == 0) {
      p->moment1 = nn::Matrix::Zero(w.rows(), w.cols());
      p->moment2 = nn::Matrix::Zero(w.rows(), w.cols());
    }
    if (p->decay() && weight_decay_ != 0.0) w *= 1.0 - lr * weight_decay_;
    p->moment1 = beta1_ * p->moment1 + (1.0 - beta1_) * g;
    p->moment2 = beta2_ * p->moment2 + (1.0 - beta2_) * g.cwiseProduct(g);
    w.array() -= lr * (p->moment1.array() / c1) / ((p->moment2.array() / c2).sqrt() + epsilon_);
  }
}

double ClipGradients(const std::vector<nn::Parameter *> &params, double max_norm) {
  double sq = 0.0;
  for (const nn::Parameter *p : params) {
    if (!p->frozen()) sq += p->grad().squaredNorm();
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (nn::Parameter *p : params) {
      if (!p->frozen()) p->grad() *= scale;
    }
  }
  return norm;
}

TrainOutcome Train(TrainTask &task, const TrainConfig &config,
                   const std::filesystem::path &out_dir, const Logger &log) {
  config.Validate();
  auto say = [&](const std::string &s) {
    if (log) log(s);
  };
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());
  const std::filesystem::path history_path = out_dir / "history.csv";
  const std::filesystem::path ckpt_path = out_dir / "best.ckpt";

  const Seeds seeds = Seeds::From(config.seed);
  Rng shuffle_rng(seeds.shuffle), dropout_rng(seeds.dropout), sampler(seeds.sampling);
  const std::vector<nn::Parameter *> params = task.Parameters();
  AdamW opt(params, config.beta1, config.beta2, config.epsilon, config.weight_decay);

  const size_t n = task.NumExamples();
  const int batches_per_epoch =
      static_cast<int>((n + static_cast<size_t>(config.batch_size) - 1) / static_cast<size_t>(config.batch_size));
  const int total_steps = std::max(1, batches_per_epoch * config.epochs);

  TrainOutcome out;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  int step = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    shuffle_rng.Shuffle(order);
    double loss_sum = 0.0;
    double lr = 0.0;
    for (int b = 0; b < batches_per_epoch; ++b) {
      lr = LrAt(std::min(step, total_steps), total_steps, config);
      for (nn::Parameter *p : params) p->ZeroGrad();
      double batch_loss = 0.0;
      const size_t begin = static_cast<size_t>(b) * static_cast<size_t>(config.batch_size);
      const size_t end = std::min(n, begin + static_cast<size_t>(config.batch_size));
      for (size_t i = begin; i < end; ++i) {
        nn::Graph g(true, true, &dropout_rng);
        nn::Var loss = task.ExampleLoss(g, order[i], sampler);
        const double v = loss.value()(0, 0);
        if (!std::isfinite(v)) {
          out.history.WriteCsv(history_path);
          throw TrainingAborted("non-finite loss in epoch " + std::to_string(epoch) + ", batch " +
                                std::to_string(b + 1) + " (example " + std::to_string(order[i]) +
                                ")");
        }
        batch_loss += v;
        if (g.NeedsGrad(loss)) g.Backward(loss);
      }
      if (config.grad_clip_norm) ClipGradients(params, *config.grad_clip_norm);
      const double enc_lr = LrAt(std::min(step, total_steps), total_steps,
                                 config.encoder_lr.value_or(config.peak_lr), config.warmup_ratio);
      opt.Step([&](const std::string &group) { return group == "encoder" ? enc_lr : lr; });
      loss_sum += batch_loss;
      ++step;
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = n == 0 ? 0.0 : loss_sum / static_cast<double>(n);
    rec.lr = lr;
    rec.metric = task.Validate();
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool improved = out.history.Add(rec);
    if (improved) {
      try {
        task.Save(ckpt_path);
      } catch (const Error &e) {
        out.history.WriteCsv(history_path);
        throw TrainingAborted(std::string("checkpoint write failed: ") + e.what());
      }
      out.best_checkpoint = ckpt_path;
      ++out.checkpoints_written;
    }
    out.history.WriteCsv(history_path);
    char buf[200];
    std::snprintf(buf, sizeof(buf), "epoch %d loss %.6f metric %.6f lr %.3g%s (%.1fs)", epoch,
                  rec.train_loss, rec.metric, rec.lr, improved ? " saved" : "", rec.wall_seconds);
    say(buf);
  }
  if (config.epochs == 0) out.history.WriteCsv(history_path);
  return out;
}

}  // namespace legalseq::train
