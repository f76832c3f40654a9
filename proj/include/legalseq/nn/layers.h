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

#ifndef LEGALSEQ_NN_LAYERS_H_
#define LEGALSEQ_NN_LAYERS_H_

#include <string>
#include <vector>

#include "legalseq/nn/graph.h"
#include "legalseq/nn/ops.h"

namespace legalseq::nn {

// y = x W + b with W stored as (in x out).
class Linear {
 public:
  Linear() = default;
  Linear(ParameterStore &store, const std::string &name, int in, int out,
         Rng &rng, bool bias = true);

  Var Forward(Graph &g, Var x) const;

  Parameter &weight() const { return *weight_; }
  Parameter *bias() const { return bias_; }
  int in() const { return static_cast<int>(weight_->value().rows()); }
  int out() const { return static_cast<int>(weight_->value().cols()); }

 private:
  Parameter *weight_ = nullptr;
  Parameter *bias_ = nullptr;
};

class Embedding {
 public:
  Embedding() = default;
  Embedding(ParameterStore &store, const std::string &name, int rows, int dim,
            double init_stddev, Rng &rng);

  Var Forward(Graph &g, const std::vector<int> &ids) const;
  Parameter &table() const { return *table_; }

 private:
  Parameter *table_ = nullptr;
};

class LayerNorm {
 public:
  LayerNorm() = default;
  LayerNorm(ParameterStore &store, const std::string &name, int dim,
            double eps = 1e-12);

  Var Forward(Graph &g, Var x) const;
  Parameter &gain() const { return *gain_; }
  Parameter &bias() const { return *bias_; }

 private:
  Parameter *gain_ = nullptr;
  Parameter *bias_ = nullptr;
  double eps_ = 1e-12;
};

// Single-direction LSTM with gate order (input, forget, cell, output).
class Lstm {
 public:
  Lstm() = default;
  Lstm(ParameterStore &store, const std::string &name, int in, int hidden,
       Rng &rng);

  // x: (T x in). Returns (T x hidden); row t is the state after consuming
  // position t, scanning backwards when `reverse` is set.
  Var Forward(Graph &g, Var x, bool reverse) const;

  int hidden() const { return hidden_; }
  Parameter &input_weight() const { return *w_; }
  Parameter &recurrent_weight() const { return *u_; }
  Parameter &bias() const { return *b_; }

 private:
  Parameter *w_ = nullptr;
  Parameter *u_ = nullptr;
  Parameter *b_ = nullptr;
  int hidden_ = 0;
};

// Concatenation of a forward and a backward LSTM: (T x 2H).
class BiLstm {
 public:
  BiLstm() = default;
  BiLstm(ParameterStore &store, const std::string &name, int in, int hidden,
         Rng &rng);

  Var Forward(Graph &g, Var x) const;
  int output_dim() const { return 2 * forward_.hidden(); }
  const Lstm &forward_lstm() const { return forward_; }
  const Lstm &backward_lstm() const { return backward_; }

 private:
  Lstm forward_;
  Lstm backward_;
};

struct TransformerConfig {
  int hidden = 64;
  int heads = 4;
  int intermediate = 128;
  int layers = 2;
  double dropout = 0.1;
  double layer_norm_eps = 1e-12;
};

// Post-norm transformer block (attention, add & norm, feed-forward, add &
// norm), the layout used by BERT-family encoders.
class TransformerLayer {
 public:
  TransformerLayer() = default;
  TransformerLayer(ParameterStore &store, const std::string &name,
                   const TransformerConfig &config, Rng &rng);

  // Full bidirectional self-attention: every row attends to every row.
  Var Forward(Graph &g, Var x) const;

  Linear query, key, value, attention_output, intermediate, output;
  LayerNorm attention_norm, output_norm;

 private:
  TransformerConfig config_;
};

class TransformerEncoder {
 public:
  TransformerEncoder() = default;
  TransformerEncoder(ParameterStore &store, const std::string &name,
                     const TransformerConfig &config, Rng &rng);

  Var Forward(Graph &g, Var x) const;

  const TransformerConfig &config() const { return config_; }
  std::vector<TransformerLayer> &layers() { return layers_; }

 private:
  TransformerConfig config_;
  std::vector<TransformerLayer> layers_;
};

}  // namespace legalseq::nn

#endif  // LEGALSEQ_NN_LAYERS_H_
