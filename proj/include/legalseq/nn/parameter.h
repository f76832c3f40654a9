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

#ifndef LEGALSEQ_NN_PARAMETER_H_
#define LEGALSEQ_NN_PARAMETER_H_

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "legalseq/base/rng.h"

namespace legalseq::nn {

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

// A trainable tensor with its accumulated gradient and optimizer moments.
class Parameter {
 public:
  Parameter(std::string name, Matrix value, bool decay)
      : name_(std::move(name)),
        value_(std::move(value)),
        grad_(Matrix::Zero(value_.rows(), value_.cols())),
        decay_(decay) {}

  const std::string &name() const { return name_; }
  Matrix &value() { return value_; }
  const Matrix &value() const { return value_; }
  Matrix &grad() { return grad_; }
  const Matrix &grad() const { return grad_; }

  // Whether decoupled weight decay applies (off for biases and norms).
  bool decay() const { return decay_; }

  // Frozen parameters take part in forward passes but are never updated.
  bool frozen() const { return frozen_; }
  void set_frozen(bool frozen) { frozen_ = frozen; }

  // Optimizer group; selects e.g. a separate learning rate for encoders.
  const std::string &group() const { return group_; }
  void set_group(std::string group) { group_ = std::move(group); }

  void ZeroGrad() { grad_.setZero(); }

  // First/second moment estimates owned by the optimizer.
  Matrix moment1;
  Matrix moment2;

 private:
  std::string name_;
  Matrix value_;
  Matrix grad_;
  bool decay_;
  bool frozen_ = false;
  std::string group_ = "head";
};

// Owns the parameters of one model, in creation order.
class ParameterStore {
 public:
  ParameterStore() = default;
  ParameterStore(const ParameterStore &) = delete;
  ParameterStore &operator=(const ParameterStore &) = delete;

  Parameter &Create(const std::string &name, Matrix init, bool decay = true);

  Parameter *Find(const std::string &name);
  const Parameter *Find(const std::string &name) const;
  Parameter &Get(const std::string &name);

  std::vector<Parameter *> All();
  std::vector<const Parameter *> All() const;

  void ZeroGrad();
  size_t NumScalars() const;

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
  std::unordered_map<std::string, Parameter *> by_name_;
};

// Initializers.
Matrix UniformInit(Eigen::Index rows, Eigen::Index cols, double bound, Rng &rng);
Matrix XavierInit(Eigen::Index rows, Eigen::Index cols, Rng &rng);
Matrix NormalInit(Eigen::Index rows, Eigen::Index cols, double stddev, Rng &rng);

}  // namespace legalseq::nn

#endif  // LEGALSEQ_NN_PARAMETER_H_
