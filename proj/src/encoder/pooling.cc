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

#include "legalseq/encoder/pooling.h"

#include "legalseq/base/errors.h"

namespace legalseq {

using nn::Graph;
using nn::Matrix;
using nn::Var;

const char *PoolingKindName(PoolingKind kind) {
  switch (kind) {
    case PoolingKind::kFirstToken: return "first_token";
    case PoolingKind::kMean: return "mean";
    case PoolingKind::kAttention: return "attention";
  }
  return "";
}

PoolingKind ParsePoolingKind(const std::string &name) {
  for (auto kind : {PoolingKind::kFirstToken, PoolingKind::kMean, PoolingKind::kAttention}) {
    if (name == PoolingKindName(kind)) return kind;
  }
  throw ConfigError("unknown pooling '" + name +
                    "' (expected first_token, mean or attention)");
}

AttentionPooling::AttentionPooling(nn::ParameterStore &store, const std::string &name,
                                   int dim, Rng &rng) {
  context_ = &store.Create(name + ".context", nn::XavierInit(dim, 1, rng));
  projection_ = &store.Create(name + ".projection", nn::XavierInit(dim, dim, rng));
  bias_ = &store.Create(name + ".bias", Matrix::Zero(1, dim), false);
}

Var AttentionPooling::Weights(Graph &g, Var rows) const {
  Var projected = nn::RowMatMul(rows, g.Param(*projection_));
  Var scores = nn::RowMatMul(nn::Tanh(nn::AddRow(projected, g.Param(*bias_))),
                             g.Param(*context_));
  return nn::SoftmaxRows(nn::Transpose(scores));
}

Var AttentionPooling::Forward(Graph &g, Var rows) const {
  if (rows.rows() == 0) throw ContractError("attention pooling over zero rows");
  Var projected = nn::RowMatMul(rows, g.Param(*projection_));
  Var scores = nn::RowMatMul(nn::Tanh(nn::AddRow(projected, g.Param(*bias_))),
                             g.Param(*context_));
  return nn::MatMul(nn::SoftmaxRows(nn::Transpose(scores)), projected);
}

Pooler::Pooler(PoolingKind kind, nn::ParameterStore &store, const std::string &name,
               int dim, Rng &rng)
    : kind_(kind) {
  if (kind == PoolingKind::kAttention) attention_.emplace(store, name, dim, rng);
}

Var Pooler::Forward(Graph &g, Var rows) const {
  if (rows.rows() == 0) throw ContractError("pooling over zero rows");
  switch (kind_) {
    case PoolingKind::kFirstToken: return nn::SliceRows(rows, 0, 1);
    case PoolingKind::kMean: return nn::MeanRows(rows);
    case PoolingKind::kAttention: return attention_->Forward(g, rows);
  }
  return rows;
}

}  // namespace legalseq
