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

#include "legalseq/crf/crf.h"

#include <cmath>
#include <limits>
#include <string>

#include "legalseq/base/errors.h"

namespace legalseq::crf {
namespace {

double LogSumExp(const Eigen::Ref<const RowVector> &v) {
  const double mx = v.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  return mx + std::log((v.array() - mx).exp().sum());
}

void CheckShapes(const EmissionMatrix &emissions, const CrfParams &params) {
  const int k = params.num_labels();
  if (params.transitions.cols() != k || params.start.size() != k ||
      params.end.size() != k || k < 1) {
    throw ContractError("CRF parameters have inconsistent shapes");
  }
  if (emissions.rows() < 1) throw ContractError("CRF: empty emission matrix");
  if (emissions.cols() != k) {
    throw ContractError("CRF: emissions have " + std::to_string(emissions.cols()) +
                        " columns, expected " + std::to_string(k));
  }
}

void CheckLabels(const EmissionMatrix &emissions, std::span<const int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != emissions.rows()) {
    throw ContractError("CRF: label sequence length " +
                        std::to_string(labels.size()) +
                        " differs from emission length " +
                        std::to_string(emissions.rows()));
  }
  for (int y : labels) {
    if (y < 0 || y >= emissions.cols()) {
      throw ContractError("CRF: label index " + std::to_string(y) + " out of range");
    }
  }
}

// alpha(t, j): log total score of prefixes ending in label j at t.
Matrix Forward(const EmissionMatrix &em, const CrfParams &p) {
  const Eigen::Index len = em.rows(), k = em.cols();
  Matrix alpha(len, k);
  alpha.row(0) = p.start + em.row(0);
  RowVector scratch(k);
  for (Eigen::Index t = 1; t < len; ++t) {
    for (Eigen::Index j = 0; j < k; ++j) {
      scratch = alpha.row(t - 1) + p.transitions.col(j).transpose();
      alpha(t, j) = LogSumExp(scratch) + em(t, j);
    }
  }
  return alpha;
}

// beta(t, i): log total score of suffixes after position t given label i.
Matrix Backward(const EmissionMatrix &em, const CrfParams &p) {
  const Eigen::Index len = em.rows(), k = em.cols();
  Matrix beta(len, k);
  beta.row(len - 1) = p.end;
  RowVector scratch(k);
  for (Eigen::Index t = len - 2; t >= 0; --t) {
    for (Eigen::Index i = 0; i < k; ++i) {
      scratch = p.transitions.row(i) + em.row(t + 1) + beta.row(t + 1);
      beta(t, i) = LogSumExp(scratch);
    }
  }
  return beta;
}

}  // namespace

CrfParams CrfParams::Zeros(int num_labels) {
  return CrfParams{Matrix::Zero(num_labels, num_labels),
                   RowVector::Zero(num_labels), RowVector::Zero(num_labels)};
}

void CrfParams::Validate() const {
  const int k = num_labels();
  if (k < 1 || transitions.cols() != k || start.size() != k || end.size() != k) {
    throw ContractError("CRF parameters have inconsistent shapes");
  }
  if (!transitions.allFinite() || !start.allFinite() || !end.allFinite()) {
    throw ContractError("CRF parameters contain non-finite values");
  }
}

double SequenceScore(const EmissionMatrix &emissions, const CrfParams &params,
                     std::span<const int> labels) {
  CheckShapes(emissions, params);
  CheckLabels(emissions, labels);
  const size_t len = labels.size();
  double score = params.start(labels[0]) + params.end(labels[len - 1]);
  for (size_t t = 0; t < len; ++t) {
    score += emissions(static_cast<Eigen::Index>(t), labels[t]);
    if (t + 1 < len) score += params.transitions(labels[t], labels[t + 1]);
  }
  return score;
}

double LogPartition(const EmissionMatrix &emissions, const CrfParams &params) {
  CheckShapes(emissions, params);
  const Matrix alpha = Forward(emissions, params);
  return LogSumExp(alpha.row(alpha.rows() - 1) + params.end);
}

ViterbiResult Viterbi(const EmissionMatrix &emissions, const CrfParams &params) {
  CheckShapes(emissions, params);
  const Eigen::Index len = emissions.rows(), k = emissions.cols();
  Matrix delta(len, k);
  Eigen::MatrixXi back(len, k);
  delta.row(0) = params.start + emissions.row(0);
  for (Eigen::Index t = 1; t < len; ++t) {
    for (Eigen::Index j = 0; j < k; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Eigen::Index i = 0; i < k; ++i) {
        const double s = delta(t - 1, i) + params.transitions(i, j);
        if (s > best) {
          best = s;
          arg = static_cast<int>(i);
        }
      }
      delta(t, j) = best + emissions(t, j);
      back(t, j) = arg;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  int last = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double s = delta(len - 1, j) + params.end(j);
    if (s > best) {
      best = s;
      last = static_cast<int>(j);
    }
  }
  ViterbiResult result;
  result.path.assign(static_cast<size_t>(len), 0);
  result.path[static_cast<size_t>(len - 1)] = last;
  for (Eigen::Index t = len - 1; t > 0; --t) {
    result.path[static_cast<size_t>(t - 1)] =
        back(t, result.path[static_cast<size_t>(t)]);
  }
  result.score = SequenceScore(emissions, params, result.path);
  return result;
}

double Nll(const EmissionMatrix &emissions, const CrfParams &params,
           std::span<const int> gold) {
  return LogPartition(emissions, params) - SequenceScore(emissions, params, gold);
}

double NllWithGradients(const EmissionMatrix &emissions, const CrfParams &params,
                        std::span<const int> gold, CrfGradients *grads) {
  CheckShapes(emissions, params);
  CheckLabels(emissions, gold);
  const Eigen::Index len = emissions.rows(), k = emissions.cols();
  const Matrix alpha = Forward(emissions, params);
  const Matrix beta = Backward(emissions, params);
  const double log_z = LogSumExp(alpha.row(len - 1) + params.end);
  const double nll = log_z - SequenceScore(emissions, params, gold);
  if (grads == nullptr) return nll;

  grads->emissions = ((alpha + beta).array() - log_z).exp().matrix();
  grads->start = grads->emissions.row(0);
  grads->end = grads->emissions.row(len - 1);
  grads->transitions = Matrix::Zero(k, k);
  for (Eigen::Index t = 0; t + 1 < len; ++t) {
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        grads->transitions(i, j) +=
            std::exp(alpha(t, i) + params.transitions(i, j) +
                     emissions(t + 1, j) + beta(t + 1, j) - log_z);
      }
    }
  }
  // Subtract the empirical (gold) feature counts.
  for (Eigen::Index t = 0; t < len; ++t) {
    const int y = gold[static_cast<size_t>(t)];
    grads->emissions(t, y) -= 1.0;
    if (t + 1 < len) grads->transitions(y, gold[static_cast<size_t>(t + 1)]) -= 1.0;
  }
  grads->start(gold.front()) -= 1.0;
  grads->end(gold.back()) -= 1.0;
  return nll;
}

Matrix Marginals(const EmissionMatrix &emissions, const CrfParams &params) {
  CheckShapes(emissions, params);
  const Matrix alpha = Forward(emissions, params);
  const Matrix beta = Backward(emissions, params);
  const double log_z = LogSumExp(alpha.row(alpha.rows() - 1) + params.end);
  return ((alpha + beta).array() - log_z).exp().matrix();
}

nn::Var NllNode(nn::Var emissions, nn::Var transitions, nn::Var start,
                nn::Var end, std::vector<int> gold) {
  CrfParams params{transitions.value(), start.value().row(0), end.value().row(0)};
  if (start.rows() != 1 || end.rows() != 1) {
    throw ContractError("CRF start/end scores must be 1 x K");
  }
  auto grads = std::make_shared<CrfGradients>();
  const bool need = emissions.graph()->requires_grad();
  const double nll =
      NllWithGradients(emissions.value(), params, gold, need ? grads.get() : nullptr);
  Matrix out(1, 1);
  out(0, 0) = nll;
  return emissions.graph()->Op(
      std::move(out), {emissions, transitions, start, end},
      [grads](const Matrix &g, std::span<Matrix *const> pg) {
        const double s = g(0, 0);
        if (pg[0]) *pg[0] += grads->emissions * s;
        if (pg[1]) *pg[1] += grads->transitions * s;
        if (pg[2]) pg[2]->row(0) += grads->start * s;
        if (pg[3]) pg[3]->row(0) += grads->end * s;
      });
}

}  // namespace legalseq::crf
