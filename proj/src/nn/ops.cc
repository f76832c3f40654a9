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

#include "legalseq/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "legalseq/base/errors.h"

namespace legalseq::nn {
namespace {

void CheckSameShape(const Var &a, const Var &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractError(std::string(op) + ": shape mismatch (" +
                        std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " +
                        std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()) + ")");
  }
}

Graph &G(const Var &v) { return *v.graph(); }

}  // namespace

Var MatMul(Var a, Var b) {
  if (a.cols() != b.rows()) throw ContractError("MatMul: inner dimensions differ");
  return G(a).Op(a.value() * b.value(), {a, b},
                 [a, b](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->noalias() += g * b.value().transpose();
                   if (pg[1]) pg[1]->noalias() += a.value().transpose() * g;
                 });
}

Var RowMatMul(Var a, Var b) {
  if (a.cols() != b.rows()) throw ContractError("RowMatMul: inner dimensions differ");
  Matrix y(a.rows(), b.cols());
  RowVector row(a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    row = a.value().row(r);
    y.row(r).noalias() = row * b.value();
  }
  return G(a).Op(std::move(y), {a, b},
                 [a, b](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->noalias() += g * b.value().transpose();
                   if (pg[1]) pg[1]->noalias() += a.value().transpose() * g;
                 });
}

Var MatMulNT(Var a, Var b) {
  if (a.cols() != b.cols()) throw ContractError("MatMulNT: inner dimensions differ");
  return G(a).Op(a.value() * b.value().transpose(), {a, b},
                 [a, b](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->noalias() += g * b.value();
                   if (pg[1]) pg[1]->noalias() += g.transpose() * a.value();
                 });
}

Var Transpose(Var a) {
  return G(a).Op(a.value().transpose(), {a},
                 [](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) *pg[0] += g.transpose();
                 });
}

Var Add(Var a, Var b) {
  CheckSameShape(a, b, "Add");
  return G(a).Op(a.value() + b.value(), {a, b},
                 [](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) *pg[0] += g;
                   if (pg[1]) *pg[1] += g;
                 });
}

Var Sub(Var a, Var b) {
  CheckSameShape(a, b, "Sub");
  return G(a).Op(a.value() - b.value(), {a, b},
                 [](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) *pg[0] += g;
                   if (pg[1]) *pg[1] -= g;
                 });
}

Var Mul(Var a, Var b) {
  CheckSameShape(a, b, "Mul");
  return G(a).Op(a.value().cwiseProduct(b.value()), {a, b},
                 [a, b](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) *pg[0] += g.cwiseProduct(b.value());
                   if (pg[1]) *pg[1] += g.cwiseProduct(a.value());
                 });
}

Var Scale(Var a, double factor) {
  return G(a).Op(a.value() * factor, {a},
                 [factor](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) *pg[0] += g * factor;
                 });
}

Var AddRow(Var a, Var row) {
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw ContractError("AddRow: expected a 1x" + std::to_string(a.cols()) +
                        " row");
  }
  Matrix out = a.value();
  out.rowwise() += row.value().row(0);
  return G(a).Op(std::move(out), {a, row},
                 [](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) *pg[0] += g;
                   if (pg[1]) *pg[1] += g.colwise().sum();
                 });
}

Var Tanh(Var a) {
  Matrix y = a.value().array().tanh().matrix();
  Matrix saved = y;
  return G(a).Op(std::move(y), {a},
                 [saved = std::move(saved)](const Matrix &g,
                                            std::span<Matrix *const> pg) {
                   if (pg[0]) {
                     *pg[0] += g.cwiseProduct((1.0 - saved.array().square()).matrix());
                   }
                 });
}

Var Sigmoid(Var a) {
  Matrix y = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  Graph &g = G(a);
  Matrix saved = y;
  return g.Op(std::move(y), {a},
              [saved = std::move(saved)](const Matrix &gr,
                                         std::span<Matrix *const> pg) {
                if (pg[0]) {
                  *pg[0] += (gr.array() * saved.array() * (1.0 - saved.array())).matrix();
                }
              });
}

Var Relu(Var a) {
  Matrix y = a.value().cwiseMax(0.0);
  return G(a).Op(std::move(y), {a},
                 [a](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) {
                     *pg[0] += (a.value().array() > 0.0).cast<double>().matrix().cwiseProduct(g);
                   }
                 });
}

Var Gelu(Var a) {
  const Matrix &x = a.value();
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x.data()[i];
    y.data()[i] = 0.5 * v * (1.0 + std::erf(v * M_SQRT1_2));
  }
  return G(a).Op(std::move(y), {a},
                 [a](const Matrix &g, std::span<Matrix *const> pg) {
                   if (!pg[0]) return;
                   const Matrix &x = a.value();
                   for (Eigen::Index i = 0; i < x.size(); ++i) {
                     const double v = x.data()[i];
                     const double cdf = 0.5 * (1.0 + std::erf(v * M_SQRT1_2));
                     const double pdf = std::exp(-0.5 * v * v) / std::sqrt(2.0 * M_PI);
                     pg[0]->data()[i] += g.data()[i] * (cdf + v * pdf);
                   }
                 });
}

Var SliceRows(Var a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.rows()) {
    throw ContractError("SliceRows: range out of bounds");
  }
  return G(a).Op(a.value().middleRows(start, count), {a},
                 [start, count](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->middleRows(start, count) += g;
                 });
}

Var SliceCols(Var a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.cols()) {
    throw ContractError("SliceCols: range out of bounds");
  }
  return G(a).Op(a.value().middleCols(start, count), {a},
                 [start, count](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->middleCols(start, count) += g;
                 });
}

Var ConcatRows(const std::vector<Var> &parts) {
  if (parts.empty()) throw ContractError("ConcatRows: no inputs");
  const Eigen::Index cols = parts[0].cols();
  Eigen::Index rows = 0;
  for (const Var &p : parts) {
    if (p.cols() != cols) throw ContractError("ConcatRows: column mismatch");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> offsets;
  Eigen::Index r = 0;
  for (const Var &p : parts) {
    offsets.push_back(r);
    out.middleRows(r, p.rows()) = p.value();
    r += p.rows();
  }
  std::vector<Eigen::Index> sizes;
  for (const Var &p : parts) sizes.push_back(p.rows());
  return G(parts[0]).Op(
      std::move(out), parts,
      [offsets, sizes](const Matrix &g, std::span<Matrix *const> pg) {
        for (size_t i = 0; i < pg.size(); ++i) {
          if (pg[i]) *pg[i] += g.middleRows(offsets[i], sizes[i]);
        }
      });
}

Var ConcatCols(const std::vector<Var> &parts) {
  if (parts.empty()) throw ContractError("ConcatCols: no inputs");
  const Eigen::Index rows = parts[0].rows();
  Eigen::Index cols = 0;
  for (const Var &p : parts) {
    if (p.rows() != rows) throw ContractError("ConcatCols: row mismatch");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> offsets, sizes;
  Eigen::Index c = 0;
  for (const Var &p : parts) {
    offsets.push_back(c);
    sizes.push_back(p.cols());
    out.middleCols(c, p.cols()) = p.value();
    c += p.cols();
  }
  return G(parts[0]).Op(
      std::move(out), parts,
      [offsets, sizes](const Matrix &g, std::span<Matrix *const> pg) {
        for (size_t i = 0; i < pg.size(); ++i) {
          if (pg[i]) *pg[i] += g.middleCols(offsets[i], sizes[i]);
        }
      });
}

Var SoftmaxRows(Var a) {
  const Matrix &x = a.value();
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mx = x.row(r).maxCoeff();
    y.row(r) = (x.row(r).array() - mx).exp().matrix();
    // sorted summation so the normalizer does not depend on column order
    std::vector<double> terms(y.row(r).begin(), y.row(r).end());
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    y.row(r) /= total;
  }
  Matrix saved = y;
  return G(a).Op(std::move(y), {a},
                 [saved = std::move(saved)](const Matrix &g,
                                            std::span<Matrix *const> pg) {
                   if (!pg[0]) return;
                   for (Eigen::Index r = 0; r < g.rows(); ++r) {
                     const double dot = g.row(r).dot(saved.row(r));
                     pg[0]->row(r) +=
                         (saved.row(r).array() * (g.row(r).array() - dot)).matrix();
                   }
                 });
}

Var MeanRows(Var a) {
  if (a.rows() == 0) throw ContractError("MeanRows: empty input");
  const double inv = 1.0 / static_cast<double>(a.rows());
  return G(a).Op(a.value().colwise().sum() * inv, {a},
                 [inv](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->rowwise() += g.row(0) * inv;
                 });
}

Var SumRows(Var a) {
  return G(a).Op(a.value().colwise().sum(), {a},
                 [](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->rowwise() += g.row(0);
                 });
}

Var Sum(Var a) {
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return G(a).Op(std::move(out), {a},
                 [](const Matrix &g, std::span<Matrix *const> pg) {
                   if (pg[0]) pg[0]->array() += g(0, 0);
                 });
}

Var LayerNormRows(Var a, Var gain, Var bias, double eps) {
  const Matrix &x = a.value();
  const Eigen::Index n = x.cols();
  if (gain.rows() != 1 || gain.cols() != n || bias.rows() != 1 ||
      bias.cols() != n) {
    throw ContractError("LayerNormRows: gain/bias must be 1 x cols");
  }
  Matrix xhat(x.rows(), n);
  Eigen::VectorXd inv_std(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var = (x.row(r).array() - mean).square().mean();
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = (x.row(r).array() - mean) * inv_std(r);
  }
  Matrix y = xhat;
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    y.row(r) = (y.row(r).array() * gain.value().row(0).array() +
                bias.value().row(0).array())
                   .matrix();
  }
  return G(a).Op(
      std::move(y), {a, gain, bias},
      [xhat = std::move(xhat), inv_std, gain, n](
          const Matrix &g, std::span<Matrix *const> pg) {
        if (pg[1]) pg[1]->row(0) += g.cwiseProduct(xhat).colwise().sum();
        if (pg[2]) pg[2]->row(0) += g.colwise().sum();
        if (!pg[0]) return;
        const auto gamma = gain.value().row(0).array();
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
          const Eigen::ArrayXd dxhat = (g.row(r).array() * gamma).transpose();
          const Eigen::ArrayXd xh = xhat.row(r).array().transpose();
          const double m1 = dxhat.mean();
          const double m2 = (dxhat * xh).mean();
          pg[0]->row(r) +=
              (inv_std(r) * (dxhat - m1 - xh * m2)).matrix().transpose();
        }
        (void)n;
      });
}

Var Dropout(Var a, double rate) {
  Graph &g = G(a);
  if (!g.training() || rate <= 0.0) return a;
  if (g.rng() == nullptr) throw ContractError("Dropout in training mode needs an Rng");
  const double keep = 1.0 - rate;
  Matrix mask(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = g.rng()->Bernoulli(keep) ? 1.0 / keep : 0.0;
  }
  Matrix out = a.value().cwiseProduct(mask);
  return g.Op(std::move(out), {a},
              [mask = std::move(mask)](const Matrix &gr,
                                       std::span<Matrix *const> pg) {
                if (pg[0]) *pg[0] += gr.cwiseProduct(mask);
              });
}

Var Gather(Var table, const std::vector<int> &indices) {
  const Matrix &t = table.value();
  Matrix out(static_cast<Eigen::Index>(indices.size()), t.cols());
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= t.rows()) {
      throw ContractError("Gather: index " + std::to_string(indices[i]) +
                          " out of range for table of " +
                          std::to_string(t.rows()) + " rows");
    }
    out.row(static_cast<Eigen::Index>(i)) = t.row(indices[i]);
  }
  return G(table).Op(std::move(out), {table},
                     [indices](const Matrix &g, std::span<Matrix *const> pg) {
                       if (!pg[0]) return;
                       for (size_t i = 0; i < indices.size(); ++i) {
                         pg[0]->row(indices[i]) += g.row(static_cast<Eigen::Index>(i));
                       }
                     });
}

Var GatherSum(Var table, const std::vector<std::vector<int>> &index_lists) {
  const Matrix &t = table.value();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(index_lists.size()), t.cols());
  for (size_t i = 0; i < index_lists.size(); ++i) {
    for (int p : index_lists[i]) {
      if (p < 0 || p >= t.rows()) {
        throw ContractError("GatherSum: index " + std::to_string(p) +
                            " out of range");
      }
      out.row(static_cast<Eigen::Index>(i)) += t.row(p);
    }
  }
  return G(table).Op(std::move(out), {table},
                     [index_lists](const Matrix &g, std::span<Matrix *const> pg) {
                       if (!pg[0]) return;
                       for (size_t i = 0; i < index_lists.size(); ++i) {
                         for (int p : index_lists[i]) {
                           pg[0]->row(p) += g.row(static_cast<Eigen::Index>(i));
                         }
                       }
                     });
}

Var SoftmaxCrossEntropy(Var logits, const std::vector<int> &targets) {
  const Matrix &x = logits.value();
  if (static_cast<Eigen::Index>(targets.size()) != x.rows()) {
    throw ContractError("SoftmaxCrossEntropy: one target per row required");
  }
  Matrix probs(x.rows(), x.cols());
  double loss = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const int t = targets[static_cast<size_t>(r)];
    if (t < 0 || t >= x.cols()) {
      throw ContractError("SoftmaxCrossEntropy: target out of range");
    }
    const double mx = x.row(r).maxCoeff();
    probs.row(r) = (x.row(r).array() - mx).exp().matrix();
    const double z = probs.row(r).sum();
    probs.row(r) /= z;
    loss += (mx + std::log(z)) - x(r, t);
  }
  Matrix out(1, 1);
  out(0, 0) = loss;
  return G(logits).Op(std::move(out), {logits},
                      [probs = std::move(probs), targets](
                          const Matrix &g, std::span<Matrix *const> pg) {
                        if (!pg[0]) return;
                        Matrix d = probs;
                        for (size_t r = 0; r < targets.size(); ++r) {
                          d(static_cast<Eigen::Index>(r), targets[r]) -= 1.0;
                        }
                        *pg[0] += d * g(0, 0);
                      });
}

}  // namespace legalseq::nn
