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

#include "legalseq/nn/graph.h"

#include "legalseq/base/errors.h"

namespace legalseq::nn {

const Matrix &Var::value() const { return graph_->value(id_); }

Var Graph::Constant(Matrix value) {
  Node node;
  node.own = std::move(value);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Graph::Param(Parameter &param) {
  auto it = param_nodes_.find(&param);
  if (it != param_nodes_.end()) return Var(this, it->second);
  Node node;
  node.ref = &param.value();
  node.needs_grad = requires_grad_ && !param.frozen();
  if (node.needs_grad) node.param = &param;
  nodes_.push_back(std::move(node));
  const int id = static_cast<int>(nodes_.size()) - 1;
  param_nodes_[&param] = id;
  return Var(this, id);
}

Var Graph::Op(Matrix value, std::vector<Var> parents, BackwardFn backward) {
  Node node;
  node.own = std::move(value);
  if (requires_grad_) {
    for (const Var &p : parents) {
      if (p.graph_ != this) {
        throw ContractError("graph operation mixes nodes of different graphs");
      }
      if (nodes_[p.id_].needs_grad) node.needs_grad = true;
    }
  }
  if (node.needs_grad) {
    node.parents.reserve(parents.size());
    for (const Var &p : parents) node.parents.push_back(p.id_);
    node.backward = std::move(backward);
  }
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

const Matrix &Graph::value(int id) const {
  const Node &node = nodes_[id];
  return node.ref != nullptr ? *node.ref : node.own;
}

void Graph::Backward(Var loss) {
  if (loss.graph_ != this) throw ContractError("loss belongs to another graph");
  const Matrix &lv = value(loss.id_);
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw ContractError("Backward expects a 1x1 loss");
  }
  if (!nodes_[loss.id_].needs_grad) return;
  Node &root = nodes_[loss.id_];
  root.grad = Matrix::Ones(1, 1);
  root.has_grad = true;

  std::vector<Matrix *> parent_grads;
  for (int id = loss.id_; id >= 0; --id) {
    Node &node = nodes_[id];
    if (!node.has_grad) continue;
    if (node.param != nullptr) node.param->grad() += node.grad;
    if (!node.backward) continue;
    parent_grads.clear();
    for (int pid : node.parents) {
      Node &parent = nodes_[pid];
      if (!parent.needs_grad) {
        parent_grads.push_back(nullptr);
        continue;
      }
      if (!parent.has_grad) {
        const Matrix &pv = value(pid);
        parent.grad = Matrix::Zero(pv.rows(), pv.cols());
        parent.has_grad = true;
      }
      parent_grads.push_back(&parent.grad);
    }
    node.backward(node.grad, parent_grads);
    // Intermediate gradients are no longer needed.
    node.grad.resize(0, 0);
    node.has_grad = false;
  }
}

}  // namespace legalseq::nn
