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

#include "legalseq/nn/parameter.h"

#include <cmath>

#include "legalseq/base/errors.h"

namespace legalseq::nn {

Parameter &ParameterStore::Create(const std::string &name, Matrix init,
                                  bool decay) {
  if (by_name_.count(name) > 0) {
    throw ContractError("duplicate parameter name '" + name + "'");
  }
  params_.push_back(std::make_unique<Parameter>(name, std::move(init), decay));
  Parameter *p = params_.back().get();
  by_name_[name] = p;
  return *p;
}

Parameter *ParameterStore::Find(const std::string &name) {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

const Parameter *ParameterStore::Find(const std::string &name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

Parameter &ParameterStore::Get(const std::string &name) {
  Parameter *p = Find(name);
  if (p == nullptr) throw ContractError("unknown parameter '" + name + "'");
  return *p;
}

std::vector<Parameter *> ParameterStore::All() {
  std::vector<Parameter *> out;
  out.reserve(params_.size());
  for (auto &p : params_) out.push_back(p.get());
  return out;
}

std::vector<const Parameter *> ParameterStore::All() const {
  std::vector<const Parameter *> out;
  out.reserve(params_.size());
  for (const auto &p : params_) out.push_back(p.get());
  return out;
}

void ParameterStore::ZeroGrad() {
  for (auto &p : params_) p->ZeroGrad();
}

size_t ParameterStore::NumScalars() const {
  size_t n = 0;
  for (const auto &p : params_) n += p->value().size();
  return n;
}

Matrix UniformInit(Eigen::Index rows, Eigen::Index cols, double bound,
                   Rng &rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.Uniform(-bound, bound);
  }
  return m;
}

Matrix XavierInit(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  return UniformInit(rows, cols, bound, rng);
}

Matrix NormalInit(Eigen::Index rows, Eigen::Index cols, double stddev,
                  Rng &rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = stddev * rng.Normal();
  }
  return m;
}

}  // namespace legalseq::nn
