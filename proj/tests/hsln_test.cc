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

#include <filesystem>

#include "grad_check.h"
#include "legalseq/base/errors.h"
#include "legalseq/hsln/hsln.h"
#include "legalseq/nn/ops.h"
#include "test_util.h"

namespace legalseq::hsln {
namespace {

namespace fs = std::filesystem;
using legalseq::nn::Matrix;

HslnConfig SmallConfig() {
  HslnConfig c;
  c.word_rnn_hidden = 6;
  c.sent_rnn_hidden = 5;
  c.dropout_rate = 0.0;
  c.encoder.hash_dim = 8;
  return c;
}

LabelSet FourLabels() {
  return LabelSet({"A", "B", "C", "D"}, LabelKind::kRhetoricalRole);
}

std::vector<std::string> Words(Rng &rng, int n) {
  return Surfaces(Tokenize(testing::RandomText(rng, n)));
}

std::vector<std::vector<std::string>> RandomDoc(Rng &rng, int sentences) {
  std::vector<std::vector<std::string>> doc;
  for (int i = 0; i < sentences; ++i) {
    doc.push_back(Words(rng, 1 + static_cast<int>(rng.UniformInt(6))));
  }
  return doc;
}

Matrix RandomMatrix(Rng &rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Uniform(-1, 1);
  return m;
}

TEST_CASE("chunk ranges and owners") {
  CHECK(ChunkRanges(10, 512, 64) == std::vector<std::pair<int, int>>{{0, 10}});
  const auto c = ChunkRanges(1000, 512, 64);
  CHECK(c == std::vector<std::pair<int, int>>{{0, 512}, {448, 960}, {896, 1000}});
  const auto owner = OwningChunks(1000, c);
  CHECK(owner[0] == 0);
  CHECK(owner[479] == 0);  // margin 32 in both chunks: earlier chunk
  CHECK(owner[480] == 1);
  CHECK(owner[999] == 2);
  for (int i = 0; i < 1000; ++i) {
    const auto [b, e] = c[static_cast<size_t>(owner[static_cast<size_t>(i)])];
    CHECK((i >= b && i < e));
  }
  CHECK_THROWS_AS(ChunkRanges(10, 4, 4), ContractError);
}

TEST_CASE("enrich_tokens shapes and determinism") {
  HslnModel model(SmallConfig(), FourLabels(), 1);
  nn::Graph g(false);
  Rng rng(2);
  nn::Var one = g.Constant(RandomMatrix(rng, 1, 8));
  CHECK(model.EnrichTokens(g, one).rows() == 1);
  CHECK(model.EnrichTokens(g, one).cols() == 12);
  nn::Var x = g.Constant(RandomMatrix(rng, 5, 8));
  CHECK(model.EnrichTokens(g, x).value() == model.EnrichTokens(g, x).value());
}

TEST_CASE("reversing tokens swaps the two directions when weights are shared") {
  HslnModel model(SmallConfig(), FourLabels(), 3);
  auto &s = model.store();
  // Copy the forward direction into the backward one.
  for (auto *p : s.All()) {
    const std::string &n = p->name();
    if (n.rfind("word_rnn.bwd.", 0) == 0) {
      p->value() = s.Get("word_rnn.fwd." + n.substr(13)).value();
    }
  }
  Rng rng(4);
  const Matrix x = RandomMatrix(rng, 6, 8);
  const Matrix rx = x.colwise().reverse();
  nn::Graph g(false);
  const Matrix out = model.EnrichTokens(g, g.Constant(x)).value();
  const Matrix rout = model.EnrichTokens(g, g.Constant(rx)).value();
  for (int t = 0; t < 6; ++t) {
    CHECK((rout.row(t).head(6) - out.row(5 - t).tail(6)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rout.row(t).tail(6) - out.row(5 - t).head(6)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("attention pooling at the 2H dimension") {
  HslnModel model(SmallConfig(), FourLabels(), 5);
  REQUIRE(model.pooler().attention() != nullptr);
  Rng rng(6);
  nn::Graph g(false);
  const Matrix x = RandomMatrix(rng, 4, 12);
  const Matrix w = model.pooler().attention()->Weights(g, g.Constant(x)).value();
  CHECK((w.array() >= 0).all());
  CHECK(std::abs(w.sum() - 1.0) < 1e-6);
  CHECK(model.EmbedSentence(g, g.Constant(x)).cols() == 12);
}

TEST_CASE("contextualization couples sentences") {
  HslnModel model(SmallConfig(), FourLabels(), 7);
  Rng rng(8);
  nn::Graph g(false);
  CHECK(model.ContextualizeSentences(g, g.Constant(RandomMatrix(rng, 1, 12))).rows() == 1);
  const Matrix x = RandomMatrix(rng, 5, 12);
  const Matrix base = model.ContextualizeSentences(g, g.Constant(x)).value();
  for (int j = 0; j < 5; ++j) {
    Matrix xp = x;
    xp(j, 3) += 1e-3;
    const Matrix pert = model.ContextualizeSentences(g, g.Constant(xp)).value();
    for (int i = 0; i < 5; ++i) {
      if (i == j) continue;
      CHECK((pert.row(i) - base.row(i)).cwiseAbs().maxCoeff() > 1e-9);
    }
  }
  const Matrix first = model.ContextualizeSentences(g, g.Constant(x.topRows(2))).value();
  const Matrix second = model.ContextualizeSentences(g, g.Constant(x.bottomRows(3))).value();
  Matrix halves(5, base.cols());
  halves << first, second;
  CHECK((halves - base).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("emissions shape and zero output layer") {
  HslnModel model(SmallConfig(), FourLabels(), 9);
  Rng rng(10);
  for (int n : {1, 3, 7}) {
    const DocumentInput doc = model.Prepare(RandomDoc(rng, n));
    nn::Graph g(false);
    const Matrix em = model.Emissions(g, doc, 0, n).value();
    CHECK(em.rows() == n);
    CHECK(em.cols() == 4);
  }
  model.output_layer().weight().value().setZero();
  model.output_layer().bias()->value().setZero();
  nn::Graph g(false);
  const DocumentInput doc = model.Prepare(RandomDoc(rng, 4));
  CHECK(model.Emissions(g, doc, 0, 4).value().isZero(0.0));
}

TEST_CASE("dominant output bias decides every label") {
  HslnModel model(SmallConfig(), FourLabels(), 11);
  model.output_layer().weight().value().setZero();
  model.output_layer().bias()->value() << 0, 0, 5, 0;
  Rng rng(12);
  const DocumentInput doc = model.Prepare(RandomDoc(rng, 6));
  CHECK(model.Predict(doc) == std::vector<int>(6, 2));
}

TEST_CASE("nll gradient w.r.t. the output layer matches finite differences") {
  HslnModel model(SmallConfig(), FourLabels(), 13);
  Rng rng(14);
  const DocumentInput doc = model.Prepare(RandomDoc(rng, 3));
  const std::vector<int> gold = {1, 3, 0};
  std::vector<nn::Parameter *> params = {&model.output_layer().weight(),
                                         model.output_layer().bias()};
  const auto r = testing::CheckGradients(params, [&](nn::Graph &g) {
    return model.Loss(g, doc, gold);
  });
  CAPTURE(r.worst);
  CHECK(r.max_rel_error < 1e-3);
  // And through the whole network.
  const auto all = testing::CheckGradients(model.store().All(), [&](nn::Graph &g) {
    return model.Loss(g, doc, gold);
  });
  CAPTURE(all.worst);
  CHECK(all.max_rel_error < 1e-3);
}

TEST_CASE("loss is non-negative and labels stay in range") {
  HslnModel model(SmallConfig(), FourLabels(), 15);
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(6));
    const DocumentInput doc = model.Prepare(RandomDoc(rng, n));
    std::vector<int> gold;
    for (int i = 0; i < n; ++i) gold.push_back(static_cast<int>(rng.UniformInt(4)));
    nn::Graph g(false);
    CHECK(model.Loss(g, doc, gold).value()(0, 0) >= 0.0);
    const auto pred = model.Predict(doc);
    CHECK(pred.size() == static_cast<size_t>(n));
    for (int y : pred) CHECK((y >= 0 && y < 4));
  }
  nn::Graph g(false);
  const DocumentInput doc = model.Prepare(RandomDoc(rng, 2));
  CHECK_THROWS_AS(model.Loss(g, doc, {0}), ContractError);
  CHECK_THROWS_AS(model.Loss(g, doc, {0, 4}), ContractError);
}

TEST_CASE("dropout is active only in training graphs") {
  HslnConfig cfg = SmallConfig();
  cfg.dropout_rate = 0.5;
  HslnModel model(cfg, FourLabels(), 17);
  Rng rng(18);
  const DocumentInput doc = model.Prepare(RandomDoc(rng, 3));
  nn::Graph e1(false), e2(false);
  CHECK(model.Emissions(e1, doc, 0, 3).value() == model.Emissions(e2, doc, 0, 3).value());
  Rng d1(5), d2(5);
  nn::Graph t1(false, true, &d1), t2(false, true, &d2);
  const Matrix a = model.Emissions(t1, doc, 0, 3).value();
  CHECK(a == model.Emissions(t2, doc, 0, 3).value());
  CHECK(a != model.Emissions(e1, doc, 0, 3).value());
}

TEST_CASE("long documents are decoded in chunks") {
  HslnConfig cfg = SmallConfig();
  cfg.max_doc_sentences = 6;
  cfg.chunk_overlap = 2;
  HslnModel model(cfg, FourLabels(), 19);
  Rng rng(20);
  const DocumentInput doc = model.Prepare(RandomDoc(rng, 15));
  const auto pred = model.Predict(doc);
  CHECK(pred.size() == 15);
  const Matrix em = model.DocumentEmissions(doc);
  CHECK(em.rows() == 15);
  // Sentence 2 belongs to chunk [0, 6).
  nn::Graph g(false);
  CHECK(em.row(2) == model.Emissions(g, doc, 0, 6).value().row(2));
  std::vector<int> gold(15, 1);
  nn::Graph lg(false);
  CHECK(model.Loss(lg, doc, gold).value()(0, 0) > 0.0);
}

TEST_CASE("independent baseline ignores neighbouring sentences") {
  IndependentConfig cfg;
  cfg.hidden = 7;
  cfg.encoder.hash_dim = 8;
  cfg.pooling = PoolingKind::kMean;
  IndependentClassifier clf(cfg, FourLabels(), 21);
  Rng rng(22);
  auto doc = RandomDoc(rng, 4);
  nn::Graph g(false);
  const Matrix base = clf.Logits(g, clf.Prepare(doc)).value();
  doc[0] = Words(rng, 5);
  doc[3] = Words(rng, 2);
  const Matrix changed = clf.Logits(g, clf.Prepare(doc)).value();
  CHECK(base.row(1) == changed.row(1));
  CHECK(base.row(2) == changed.row(2));

  HslnModel hsln(SmallConfig(), FourLabels(), 23);
  auto doc2 = RandomDoc(rng, 4);
  const Matrix h1 = hsln.DocumentEmissions(hsln.Prepare(doc2));
  doc2[0] = Words(rng, 5);
  const Matrix h2 = hsln.DocumentEmissions(hsln.Prepare(doc2));
  CHECK(h1.row(2) != h2.row(2));
}

TEST_CASE("independent baseline ties go to label 0") {
  IndependentConfig cfg;
  cfg.encoder.hash_dim = 8;
  cfg.hidden = 4;
  IndependentClassifier clf(cfg, FourLabels(), 24);
  clf.output_layer().weight().value().setZero();
  clf.output_layer().bias()->value().setZero();
  Rng rng(25);
  CHECK(clf.Predict(clf.Prepare(RandomDoc(rng, 3))) == std::vector<int>(3, 0));
  cfg.pooling = PoolingKind::kAttention;
  CHECK_THROWS_AS(IndependentClassifier(cfg, FourLabels(), 0), ConfigError);
  CHECK(ArgmaxRows(Matrix::Constant(2, 3, 1.5)) == std::vector<int>{0, 0});
}

TEST_CASE("checkpoints round-trip and reject foreign label sets") {
  const fs::path dir = fs::temp_directory_path() / "legalseq_hsln_ckpt";
  fs::create_directories(dir);
  HslnModel model(SmallConfig(), FourLabels(), 26);
  model.output_layer().bias()->value() << 0.1, 0.2, 0.3, 0.4;
  model.store().Get("crf.transitions").value()(1, 2) = 0.7;
  model.Save(dir / "m.ckpt");
  Rng rng(27);
  const auto sentences = RandomDoc(rng, 5);
  const LabelSet labels = FourLabels();
  auto loaded = HslnModel::Load(dir / "m.ckpt", &labels);
  CHECK(loaded->DocumentEmissions(loaded->Prepare(sentences)) ==
        model.DocumentEmissions(model.Prepare(sentences)));
  CHECK(loaded->CrfParameters().transitions == model.CrfParameters().transitions);
  CHECK(loaded->config().word_rnn_hidden == 6);

  const LabelSet other({"A", "B", "X", "D"}, LabelKind::kRhetoricalRole);
  CHECK_THROWS_AS(HslnModel::Load(dir / "m.ckpt", &other), ConfigError);
  CHECK_THROWS_AS(IndependentClassifier::Load(dir / "m.ckpt"), ConfigError);
  CHECK_THROWS_AS(HslnModel::Load(dir / "missing.ckpt"), ConfigError);

  IndependentConfig icfg;
  icfg.encoder.hash_dim = 8;
  icfg.hidden = 3;
  IndependentClassifier clf(icfg, FourLabels(), 28);
  clf.Save(dir / "i.ckpt");
  auto iloaded = IndependentClassifier::Load(dir / "i.ckpt", &labels);
  nn::Graph g(false);
  CHECK(iloaded->Logits(g, iloaded->Prepare(sentences)).value() ==
        clf.Logits(g, clf.Prepare(sentences)).value());
  fs::remove_all(dir);
}

TEST_CASE("config keys round-trip") {
  HslnConfig c = SmallConfig();
  c.pooling = PoolingKind::kMean;
  c.dropout_rate = 0.3;
  const HslnConfig back = HslnConfig::FromConfig(c.ToConfig());
  CHECK(back.pooling == PoolingKind::kMean);
  CHECK(back.dropout_rate == 0.3);
  CHECK(back.encoder.hash_dim == 8);
  Config bad;
  bad.Set("model.dropout", "1.0");
  CHECK_THROWS_AS(HslnConfig::FromConfig(bad), ConfigError);
}

}  // namespace
}  // namespace legalseq::hsln
