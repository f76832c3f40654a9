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

#include <doctest.h>

#include "grad_check.h"
#include "legalseq/base/errors.h"
#include "legalseq/nn/layers.h"
#include "legalseq/nn/ops.h"

namespace legalseq::nn {
namespace {

Matrix RandomMatrix(Rng &rng, int r, int c) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Uniform(-1, 1);
  return m;
}

// Fixed random weights turning any matrix into a scalar loss that depends on
// every entry.
Var Project(Graph &g, Var x, uint64_t seed) {
  Rng rng(seed);
  return Sum(Mul(x, g.Constant(RandomMatrix(rng, static_cast<int>(x.rows()),
                                            static_cast<int>(x.cols())))));
}

void ExpectGradOk(const std::vector<Parameter *> &params,
                  const std::function<Var(Graph &)> &loss, double tol = 1e-6) {
  const auto r = testing::CheckGradients(params, loss);
  CAPTURE(r.worst);
  CHECK(r.checked > 0);
  CHECK(r.max_rel_error < tol);
}

TEST_CASE("elementwise and matrix op gradients") {
  Rng rng(1);
  ParameterStore store;
  Parameter &a = store.Create("a", RandomMatrix(rng, 3, 4));
  Parameter &b = store.Create("b", RandomMatrix(rng, 4, 2));
  Parameter &c = store.Create("c", RandomMatrix(rng, 3, 4));
  Parameter &row = store.Create("row", RandomMatrix(rng, 1, 4));
  const std::vector<Parameter *> all = {&a, &b, &c, &row};

  ExpectGradOk(all, [&](Graph &g) { return Project(g, MatMul(g.Param(a), g.Param(b)), 1); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, MatMulNT(g.Param(a), g.Param(c)), 2); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Transpose(g.Param(a)), 3); });
  ExpectGradOk(all, [&](Graph &g) {
    return Project(g, Mul(Sub(g.Param(a), g.Param(c)), Add(g.Param(a), g.Param(c))), 4);
  });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Scale(AddRow(g.Param(a), g.Param(row)), 0.3), 5); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Tanh(g.Param(a)), 6); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Sigmoid(g.Param(a)), 7); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Gelu(g.Param(a)), 8); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Relu(Add(g.Param(a), g.Constant(Matrix::Constant(3, 4, 0.05)))), 9); });
}

TEST_CASE("row matmul agrees with matmul and rows do not see each other") {
  Rng rng(11);
  ParameterStore store;
  Parameter &a = store.Create("a", RandomMatrix(rng, 9, 13));
  Parameter &b = store.Create("b", RandomMatrix(rng, 13, 5));
  ExpectGradOk({&a, &b}, [&](Graph &g) { return Project(g, RowMatMul(g.Param(a), g.Param(b)), 4); });
  Graph g(false);
  const Matrix y = RowMatMul(g.Param(a), g.Param(b)).value();
  CHECK((y - a.value() * b.value()).cwiseAbs().maxCoeff() < 1e-12);
  Matrix reversed = a.value().colwise().reverse();
  const Matrix yr = RowMatMul(g.Constant(reversed), g.Param(b)).value();
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    CHECK((yr.row(y.rows() - 1 - r).array() == y.row(r).array()).all());
  }
}

TEST_CASE("structural op gradients") {
  Rng rng(2);
  ParameterStore store;
  Parameter &a = store.Create("a", RandomMatrix(rng, 4, 3));
  Parameter &b = store.Create("b", RandomMatrix(rng, 2, 3));
  const std::vector<Parameter *> all = {&a, &b};
  ExpectGradOk(all, [&](Graph &g) { return Project(g, SliceRows(g.Param(a), 1, 2), 1); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, SliceCols(g.Param(a), 1, 2), 2); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, ConcatRows({g.Param(a), g.Param(b), g.Param(a)}), 3); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, ConcatCols({SliceRows(g.Param(a), 0, 2), g.Param(b)}), 4); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, SoftmaxRows(g.Param(a)), 5); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, MeanRows(g.Param(a)), 6); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, SumRows(g.Param(a)), 7); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, Gather(g.Param(a), {3, 0, 3}), 8); });
  ExpectGradOk(all, [&](Graph &g) { return Project(g, GatherSum(g.Param(a), {{1, 2}, {0}, {3, 3}}), 9); });
  ExpectGradOk(all, [&](Graph &g) { return SoftmaxCrossEntropy(g.Param(a), {2, 0, 1, 1}); });
}

TEST_CASE("layer norm gradient") {
  Rng rng(3);
  ParameterStore store;
  Parameter &x = store.Create("x", RandomMatrix(rng, 3, 5));
  Parameter &gain = store.Create("gain", RandomMatrix(rng, 1, 5));
  Parameter &bias = store.Create("bias", RandomMatrix(rng, 1, 5));
  ExpectGradOk({&x, &gain, &bias}, [&](Graph &g) {
    return Project(g, LayerNormRows(g.Param(x), g.Param(gain), g.Param(bias), 1e-12), 1);
  }, 1e-5);
}

TEST_CASE("lstm, bilstm and transformer gradients") {
  Rng rng(4);
  ParameterStore store;
  Parameter &x = store.Create("x", RandomMatrix(rng, 4, 3));
  BiLstm lstm(store, "bi", 3, 2, rng);
  TransformerConfig cfg;
  cfg.hidden = 8;
  cfg.heads = 2;
  cfg.intermediate = 12;
  cfg.layers = 1;
  TransformerEncoder enc(store, "enc", cfg, rng);
  Linear in(store, "in", 3, 8, rng);
  ExpectGradOk(store.All(), [&](Graph &g) { return Project(g, lstm.Forward(g, g.Param(x)), 1); }, 1e-5);
  ExpectGradOk(store.All(), [&](Graph &g) {
    return Project(g, enc.Forward(g, in.Forward(g, g.Param(x))), 2);
  }, 1e-4);
}

TEST_CASE("bilstm reversal swaps the direction halves") {
  Rng rng(5);
  ParameterStore store;
  Lstm cell(store, "cell", 3, 4, rng);
  const Matrix x = RandomMatrix(rng, 5, 3);
  Graph g(false, false);
  const Matrix fwd = cell.Forward(g, g.Constant(x), false).value();
  const Matrix rev_input = x.colwise().reverse();
  const Matrix bwd_on_rev = cell.Forward(g, g.Constant(rev_input), true).value();
  CHECK((bwd_on_rev.colwise().reverse() - fwd).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dropout is identity outside training and inverted within") {
  Rng rng(6);
  const Matrix x = Matrix::Constant(50, 40, 2.0);
  Graph eval(false, false);
  CHECK(Dropout(eval.Constant(x), 0.5).value() == x);
  Graph train(false, true, &rng);
  const Matrix y = Dropout(train.Constant(x), 0.5).value();
  int zeros = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    CHECK((y.data()[i] == 0.0 || y.data()[i] == 4.0));
    zeros += y.data()[i] == 0.0;
  }
  CHECK(std::abs(zeros / 2000.0 - 0.5) < 0.05);
}

TEST_CASE("frozen parameters receive no gradient") {
  Rng rng(7);
  ParameterStore store;
  Parameter &a = store.Create("a", RandomMatrix(rng, 2, 2));
  Parameter &b = store.Create("b", RandomMatrix(rng, 2, 2));
  b.set_frozen(true);
  Graph g;
  g.Backward(Sum(MatMul(g.Param(a), g.Param(b))));
  CHECK(a.grad().cwiseAbs().sum() > 0);
  CHECK(b.grad().cwiseAbs().sum() == 0);
  CHECK_THROWS_AS(store.Create("a", Matrix::Zero(1, 1)), ContractError);
}

}  // namespace
}  // namespace legalseq::nn
