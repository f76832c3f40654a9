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

#ifndef LEGALSEQ_NN_GRAPH_H_
#define LEGALSEQ_NN_GRAPH_H_

#include <deque>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "legalseq/base/rng.h"
#include "legalseq/nn/parameter.h"

namespace legalseq::nn {

class Graph;

// Handle to a node of a Graph. Cheap to copy; only valid while the graph
// that produced it is alive.
class Var {
 public:
  Var() = default;

  const Matrix &value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  Graph *graph() const { return graph_; }
  int id() const { return id_; }
  bool valid() const { return graph_ != nullptr; }

 private:
  friend class Graph;
  Var(Graph *graph, int id) : graph_(graph), id_(id) {}

  Graph *graph_ = nullptr;
  int id_ = -1;
};

// Accumulates d(loss)/d(parent) for every parent that needs a gradient.
// parent_grads[i] is null when parent i does not.
using BackwardFn = std::function<void(const Matrix &grad_out,
                                      std::span<Matrix *const> parent_grads)>;

// Reverse-mode automatic differentiation tape over dense matrices.
//
// Nodes are appended in evaluation order, so a reverse sweep over node ids
// is a valid topological order for backpropagation. A graph built with
// requires_grad=false records values only (inference mode). The training
// flag switches dropout on.
class Graph {
 public:
  explicit Graph(bool requires_grad = true, bool training = false,
                 Rng *rng = nullptr)
      : requires_grad_(requires_grad), training_(training), rng_(rng) {}
  Graph(const Graph &) = delete;
  Graph &operator=(const Graph &) = delete;

  bool requires_grad() const { return requires_grad_; }
  bool training() const { return training_; }
  Rng *rng() const { return rng_; }

  Var Constant(Matrix value);

  // Reads a parameter. Frozen parameters behave as constants. Repeated reads
  // of one parameter share a single node.
  Var Param(Parameter &param);

  // Adds an operation node. `backward` is dropped when no parent needs a
  // gradient.
  Var Op(Matrix value, std::vector<Var> parents, BackwardFn backward);

  const Matrix &value(int id) const;
  bool NeedsGrad(Var v) const { return nodes_[v.id()].needs_grad; }

  // Backpropagates from a 1x1 loss node and adds the results into each
  // parameter's grad().
  void Backward(Var loss);

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix own;
    const Matrix *ref = nullptr;
    Matrix grad;
    bool has_grad = false;
    bool needs_grad = false;
    std::vector<int> parents;
    BackwardFn backward;
    Parameter *param = nullptr;
  };

  bool requires_grad_;
  bool training_;
  Rng *rng_;
  std::deque<Node> nodes_;
  std::unordered_map<const Parameter *, int> param_nodes_;
};

}  // namespace legalseq::nn

#endif  // LEGALSEQ_NN_GRAPH_H_
