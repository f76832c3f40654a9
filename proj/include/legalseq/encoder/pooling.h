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

#ifndef LEGALSEQ_ENCODER_POOLING_H_
#define LEGALSEQ_ENCODER_POOLING_H_

#include <optional>
#include <string>

#include "legalseq/nn/layers.h"

namespace legalseq {

enum class PoolingKind { kFirstToken, kMean, kAttention };

const char *PoolingKindName(PoolingKind kind);
PoolingKind ParsePoolingKind(const std::string &name);

// Attention pooling over the rows v_j of an (m x D) matrix:
//   alpha = softmax_j(u . tanh(P v_j + b)),  output = sum_j alpha_j P v_j.
class AttentionPooling {
 public:
  AttentionPooling() = default;
  AttentionPooling(nn::ParameterStore &store, const std::string &name, int dim,
                   Rng &rng);

  nn::Var Forward(nn::Graph &g, nn::Var rows) const;
  // (1 x m) weights alpha.
  nn::Var Weights(nn::Graph &g, nn::Var rows) const;

  nn::Parameter &context() const { return *context_; }
  nn::Parameter &projection() const { return *projection_; }
  nn::Parameter &bias() const { return *bias_; }

 private:
  nn::Parameter *context_ = nullptr;     // D x 1
  nn::Parameter *projection_ = nullptr;  // D x D
  nn::Parameter *bias_ = nullptr;        // 1 x D
};

// A pooling strategy; only the attention kind owns parameters.
class Pooler {
 public:
  Pooler() = default;
  Pooler(PoolingKind kind, nn::ParameterStore &store, const std::string &name,
         int dim, Rng &rng);

  // (1 x D) pooled vector of a non-empty (m x D) input.
  nn::Var Forward(nn::Graph &g, nn::Var rows) const;

  PoolingKind kind() const { return kind_; }
  const AttentionPooling *attention() const {
    return attention_ ? &*attention_ : nullptr;
  }

 private:
  PoolingKind kind_ = PoolingKind::kFirstToken;
  std::optional<AttentionPooling> attention_;
};

}  // namespace legalseq

#endif  // LEGALSEQ_ENCODER_POOLING_H_
