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

#ifndef LEGALSEQ_CRF_CRF_H_
#define LEGALSEQ_CRF_CRF_H_

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "legalseq/nn/graph.h"

namespace legalseq::crf {

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

// Linear-chain CRF potentials over K labels. transitions(i, j) scores label
// j following label i; start and end score the first and last label.
struct CrfParams {
  Matrix transitions;
  RowVector start;
  RowVector end;

  static CrfParams Zeros(int num_labels);
  int num_labels() const { return static_cast<int>(transitions.rows()); }
  // Throws ContractError unless shapes agree, K >= 1 and entries are finite.
  void Validate() const;
};

// L x K emission scores for a sequence of length L.
using EmissionMatrix = Matrix;

double SequenceScore(const EmissionMatrix &emissions, const CrfParams &params,
                     std::span<const int> labels);

// log of the sum over all K^L label sequences of exp(SequenceScore), by the
// forward recursion in log space.
double LogPartition(const EmissionMatrix &emissions, const CrfParams &params);

struct ViterbiResult {
  std::vector<int> path;
  double score = 0.0;
};

// Highest-scoring label sequence. Ties go to the lowest label index at each
// backtrack step.
ViterbiResult Viterbi(const EmissionMatrix &emissions, const CrfParams &params);

// Negative log-likelihood of `gold`: LogPartition - SequenceScore(gold).
double Nll(const EmissionMatrix &emissions, const CrfParams &params,
           std::span<const int> gold);

struct CrfGradients {
  Matrix emissions;
  Matrix transitions;
  RowVector start;
  RowVector end;
};

// Nll together with its gradient with respect to every input.
double NllWithGradients(const EmissionMatrix &emissions, const CrfParams &params,
                        std::span<const int> gold, CrfGradients *grads);

// Posterior label marginals by forward-backward; each row sums to one.
Matrix Marginals(const EmissionMatrix &emissions, const CrfParams &params);

// Nll as a graph node. transitions is K x K, start and end are 1 x K.
nn::Var NllNode(nn::Var emissions, nn::Var transitions, nn::Var start,
                nn::Var end, std::vector<int> gold);

}  // namespace legalseq::crf

#endif  // LEGALSEQ_CRF_CRF_H_
