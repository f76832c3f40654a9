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

#include <cmath>

#include "crf_oracle.h"
#include "grad_check.h"
#include "legalseq/base/errors.h"
#include "legalseq/crf/crf.h"

namespace legalseq::crf {
namespace {

using testing::RandomInstance;

TEST_CASE("sequence_score worked examples") {
  const CrfParams zero = CrfParams::Zeros(3);
  CHECK(SequenceScore(Matrix::Zero(4, 3), zero, std::vector<int>{2, 0, 1, 1}) == 0.0);
  Matrix em(1, 2);
  em << 1, 3;
  CHECK(SequenceScore(em, CrfParams::Zeros(2), std::vector<int>{1}) == 3.0);
  CHECK_THROWS_AS(SequenceScore(em, CrfParams::Zeros(2), std::vector<int>{1, 0}), ContractError);
  CHECK_THROWS_AS(SequenceScore(em, CrfParams::Zeros(2), std::vector<int>{2}), ContractError);
}

TEST_CASE("sequence_score matches the term-sum oracle") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = RandomInstance(rng, 4, 3, 2.0);
    std::vector<int> y = {static_cast<int>(rng.UniformInt(3)), static_cast<int>(rng.UniformInt(3)),
                          static_cast<int>(rng.UniformInt(3)), static_cast<int>(rng.UniformInt(3))};
    CHECK(SequenceScore(inst.emissions, inst.params, y) ==
          doctest::Approx(testing::BruteScore(inst.emissions, inst.params, y)).epsilon(1e-12));
  }
}

TEST_CASE("log_partition closed forms") {
  CHECK(LogPartition(Matrix::Zero(3, 4), CrfParams::Zeros(4)) ==
        doctest::Approx(3 * std::log(4.0)).epsilon(1e-14));
  Rng rng(2);
  const auto inst = RandomInstance(rng, 1, 3, 1.0);
  const Eigen::RowVectorXd v = inst.params.start + inst.emissions.row(0) + inst.params.end;
  const double lse = std::log(v.array().exp().sum());
  CHECK(LogPartition(inst.emissions, inst.params) == doctest::Approx(lse).epsilon(1e-14));
}

TEST_CASE("log_partition is stable for scores near 1e4") {
  Rng rng(3);
  const auto inst = RandomInstance(rng, 5, 4, 1e4);
  const double z = LogPartition(inst.emissions, inst.params);
  CHECK(std::isfinite(z));
  CHECK(std::abs(z - testing::Enumerate(inst.emissions, inst.params).log_z) < 1e-6 * std::abs(z));
}

TEST_CASE("viterbi worked examples") {
  Matrix em = Matrix::Zero(7, 3);
  for (int t = 0; t < 7; ++t) em(t, t % 3) = 10;
  const auto dominant = Viterbi(em, CrfParams::Zeros(3));
  CHECK(dominant.path == std::vector<int>{0, 1, 2, 0, 1, 2, 0});
  CHECK(dominant.score == 70.0);
  CHECK(Viterbi(Matrix::Zero(5, 4), CrfParams::Zeros(4)).path == std::vector<int>(5, 0));
}

TEST_CASE("viterbi ties go to the lowest label at each backtrack step") {
  // Labels 1 and 2 tie at the end; among predecessors of 1, labels 0 and 2 tie.
  Matrix em(2, 3);
  em << 1, 0, 1, 0, 2, 2;
  const auto r = Viterbi(em, CrfParams::Zeros(3));
  CHECK(r.path == std::vector<int>{0, 1});
}

TEST_CASE("nll worked examples") {
  CHECK(Nll(Matrix::Zero(2, 3), CrfParams::Zeros(3), std::vector<int>{1, 2}) ==
        doctest::Approx(2 * std::log(3.0)).epsilon(1e-14));
  Matrix em = Matrix::Zero(4, 3);
  for (int t = 0; t < 4; ++t) em(t, (t + 1) % 3) = 50;
  const auto path = Viterbi(em, CrfParams::Zeros(3)).path;
  const double nll = Nll(em, CrfParams::Zeros(3), path);
  CHECK(nll >= 0);
  CHECK(nll < 1e-12);
}

TEST_CASE("marginals closed forms") {
  const Matrix uniform = Marginals(Matrix::Zero(3, 4), CrfParams::Zeros(4));
  CHECK((uniform.array() - 0.25).abs().maxCoeff() < 1e-15);
  Rng rng(4);
  const auto inst = RandomInstance(rng, 1, 4, 2.0);
  Eigen::RowVectorXd v = inst.params.start + inst.emissions.row(0) + inst.params.end;
  v = (v.array() - v.maxCoeff()).exp();
  v /= v.sum();
  CHECK((Marginals(inst.emissions, inst.params) - v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("random instances match exhaustive enumeration") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int len = 1 + static_cast<int>(rng.UniformInt(5));
    const int k = 1 + static_cast<int>(rng.UniformInt(4));
    const auto inst = RandomInstance(rng, len, k, 3.0);
    const auto e = testing::Enumerate(inst.emissions, inst.params);
    const auto v = Viterbi(inst.emissions, inst.params);
    CHECK(std::abs(LogPartition(inst.emissions, inst.params) - e.log_z) < 1e-6);
    CHECK(std::abs(v.score - e.best) < 1e-6);
    CHECK(std::abs(testing::BruteScore(inst.emissions, inst.params, v.path) - e.best) < 1e-6);
    const Matrix m = Marginals(inst.emissions, inst.params);
    CHECK((m - e.marginals).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((m.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-8);
    CHECK(v.score <= LogPartition(inst.emissions, inst.params) + 1e-12);
  }
}

TEST_CASE("nll equals minus log probability of gold and is non-negative") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int len = 1 + static_cast<int>(rng.UniformInt(4));
    const int k = 1 + static_cast<int>(rng.UniformInt(4));
    const auto inst = RandomInstance(rng, len, k, 2.0);
    std::vector<int> gold;
    for (int t = 0; t < len; ++t) gold.push_back(static_cast<int>(rng.UniformInt(static_cast<uint64_t>(k))));
    const auto e = testing::Enumerate(inst.emissions, inst.params);
    const double expect = e.log_z - testing::BruteScore(inst.emissions, inst.params, gold);
    const double nll = Nll(inst.emissions, inst.params, gold);
    CHECK(nll >= -1e-9);
    CHECK(std::abs(nll - expect) < 1e-9);
  }
}

TEST_CASE("shift covariance at one position") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = RandomInstance(rng, 5, 3, 2.0);
    const auto before_v = Viterbi(inst.emissions, inst.params);
    const double before_z = LogPartition(inst.emissions, inst.params);
    const double c = rng.Uniform(-5, 5);
    const int t = static_cast<int>(rng.UniformInt(5));
    inst.emissions.row(t).array() += c;
    const auto after_v = Viterbi(inst.emissions, inst.params);
    CHECK(after_v.path == before_v.path);
    CHECK(std::abs(after_v.score - (before_v.score + c)) < 1e-12);
    CHECK(std::abs(LogPartition(inst.emissions, inst.params) - (before_z + c)) < 1e-12);
  }
}

TEST_CASE("analytic nll gradient matches central differences") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int len = 1 + static_cast<int>(rng.UniformInt(6));
    const int k = 1 + static_cast<int>(rng.UniformInt(4));
    const auto inst = RandomInstance(rng, len, k, 1.5);
    std::vector<int> gold;
    for (int t = 0; t < len; ++t) gold.push_back(static_cast<int>(rng.UniformInt(static_cast<uint64_t>(k))));
    nn::ParameterStore store;
    auto &em = store.Create("em", inst.emissions);
    auto &tr = store.Create("tr", inst.params.transitions);
    auto &st = store.Create("st", inst.params.start);
    auto &en = store.Create("en", inst.params.end);
    const auto r = testing::CheckGradients(store.All(), [&](nn::Graph &g) {
      return NllNode(g.Param(em), g.Param(tr), g.Param(st), g.Param(en), gold);
    });
    CAPTURE(r.worst);
    CHECK(r.max_rel_error < 1e-4);
  }
}

TEST_CASE("parameter validation") {
  CrfParams p = CrfParams::Zeros(3);
  p.Validate();
  p.transitions(1, 1) = std::nan("");
  CHECK_THROWS_AS(p.Validate(), ContractError);
  CHECK_THROWS_AS(LogPartition(Matrix::Zero(0, 3), CrfParams::Zeros(3)), ContractError);
  CHECK_THROWS_AS(LogPartition(Matrix::Zero(2, 2), CrfParams::Zeros(3)), ContractError);
}

}  // namespace
}  // namespace legalseq::crf
