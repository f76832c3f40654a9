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

#include "legalseq/nn/layers.h"

#include <cmath>

#include "legalseq/base/errors.h"

namespace legalseq::nn {

Linear::Linear(ParameterStore &store, const std::string &name, int in, int out,
               Rng &rng, bool bias) {
  weight_ = &store.Create(name + ".weight", XavierInit(in, out, rng));
  if (bias) bias_ = &store.Create(name + ".bias", Matrix::Zero(1, out), false);
}

Var Linear::Forward(Graph &g, Var x) const {
  Var y = MatMul(x, g.Param(*weight_));
  if (bias_ != nullptr) y = AddRow(y, g.Param(*bias_));
  return y;
}

Embedding::Embedding(ParameterStore &store, const std::string &name, int rows,
                     int dim, double init_stddev, Rng &rng) {
  table_ = &store.Create(name, NormalInit(rows, dim, init_stddev, rng), false);
}

Var Embedding::Forward(Graph &g, const std::vector<int> &ids) const {
  return Gather(g.Param(*table_), ids);
}

LayerNorm::LayerNorm(ParameterStore &store, const std::string &name, int dim,
                     double eps)
    : eps_(eps) {
  gain_ = &store.Create(name + ".gain", Matrix::Ones(1, dim), false);
  bias_ = &store.Create(name + ".bias", Matrix::Zero(1, dim), false);
}

Var LayerNorm::Forward(Graph &g, Var x) const {
  return LayerNormRows(x, g.Param(*gain_), g.Param(*bias_), eps_);
}

Lstm::Lstm(ParameterStore &store, const std::string &name, int in, int hidden,
           Rng &rng)
    : hidden_(hidden) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  w_ = &store.Create(name + ".w_input", UniformInit(in, 4 * hidden, bound, rng));
  u_ = &store.Create(name + ".w_recurrent",
                     UniformInit(hidden, 4 * hidden, bound, rng));
  Matrix b = UniformInit(1, 4 * hidden, bound, rng);
  b_ = &store.Create(name + ".bias", b, false);
}

Var Lstm::Forward(Graph &g, Var x, bool reverse) const {
  const Eigen::Index steps = x.rows();
  if (steps == 0) throw ContractError("Lstm: empty input sequence");
  const int h = hidden_;
  // Input projections for all steps at once.
  Var projected = AddRow(MatMul(x, g.Param(*w_)), g.Param(*b_));
  Var u = g.Param(*u_);
  Var state = g.Constant(Matrix::Zero(1, h));
  Var cell = g.Constant(Matrix::Zero(1, h));
  std::vector<Var> outputs(static_cast<size_t>(steps));
  for (Eigen::Index k = 0; k < steps; ++k) {
    const Eigen::Index t = reverse ? steps - 1 - k : k;
    Var z = Add(SliceRows(projected, t, 1), MatMul(state, u));
    Var in_gate = Sigmoid(SliceCols(z, 0, h));
    Var forget_gate = Sigmoid(SliceCols(z, h, h));
    Var candidate = Tanh(SliceCols(z, 2 * h, h));
    Var out_gate = Sigmoid(SliceCols(z, 3 * h, h));
    cell = Add(Mul(forget_gate, cell), Mul(in_gate, candidate));
    state = Mul(out_gate, Tanh(cell));
    outputs[static_cast<size_t>(t)] = state;
  }
  return ConcatRows(outputs);
}

BiLstm::BiLstm(ParameterStore &store, const std::string &name, int in,
               int hidden, Rng &rng)
    : forward_(store, name + ".fwd", in, hidden, rng),
      backward_(store, name + ".bwd", in, hidden, rng) {}

Var BiLstm::Forward(Graph &g, Var x) const {
  return ConcatCols({forward_.Forward(g, x, false), backward_.Forward(g, x, true)});
}

TransformerLayer::TransformerLayer(ParameterStore &store,
                                   const std::string &name,
                                   const TransformerConfig &config, Rng &rng)
    : config_(config) {
  if (config.hidden % config.heads != 0) {
    throw ContractError("transformer hidden size must be divisible by heads");
  }
  const int d = config.hidden;
  query = Linear(store, name + ".attention.query", d, d, rng);
  key = Linear(store, name + ".attention.key", d, d, rng);
  value = Linear(store, name + ".attention.value", d, d, rng);
  attention_output = Linear(store, name + ".attention.output", d, d, rng);
  attention_norm = LayerNorm(store, name + ".attention.norm", d, config.layer_norm_eps);
  intermediate = Linear(store, name + ".ffn.intermediate", d, config.intermediate, rng);
  output = Linear(store, name + ".ffn.output", config.intermediate, d, rng);
  output_norm = LayerNorm(store, name + ".ffn.norm", d, config.layer_norm_eps);
}

Var TransformerLayer::Forward(Graph &g, Var x) const {
  const int heads = config_.heads;
  const int head_dim = config_.hidden / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  Var q = query.Forward(g, x);
  Var k = key.Forward(g, x);
  Var v = value.Forward(g, x);
  std::vector<Var> contexts;
  contexts.reserve(static_cast<size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    Var qh = SliceCols(q, h * head_dim, head_dim);
    Var kh = SliceCols(k, h * head_dim, head_dim);
    Var vh = SliceCols(v, h * head_dim, head_dim);
    Var weights = SoftmaxRows(Scale(MatMulNT(qh, kh), scale));
    weights = Dropout(weights, config_.dropout);
    contexts.push_back(MatMul(weights, vh));
  }
  Var context = heads == 1 ? contexts[0] : ConcatCols(contexts);
  Var attended = Dropout(attention_output.Forward(g, context), config_.dropout);
  Var h1 = attention_norm.Forward(g, Add(attended, x));
  Var ffn = output.Forward(g, Gelu(intermediate.Forward(g, h1)));
  ffn = Dropout(ffn, config_.dropout);
  return output_norm.Forward(g, Add(ffn, h1));
}

TransformerEncoder::TransformerEncoder(ParameterStore &store,
                                       const std::string &name,
                                       const TransformerConfig &config,
                                       Rng &rng)
    : config_(config) {
  for (int i = 0; i < config.layers; ++i) {
    layers_.emplace_back(store, name + ".layer" + std::to_string(i), config, rng);
  }
}

Var TransformerEncoder::Forward(Graph &g, Var x) const {
  for (const auto &layer : layers_) x = layer.Forward(g, x);
  return x;
}

}  // namespace legalseq::nn
