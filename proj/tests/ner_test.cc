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
#include <json.hpp>
#include <set>

#include "legalseq/base/errors.h"
#include "legalseq/corpus/corpus_io.h"
#include "legalseq/ner/ner_model.h"
#include "legalseq/nn/ops.h"
#include "test_util.h"

namespace legalseq::ner {
namespace {

namespace fs = std::filesystem;
using nn::Matrix;

LabelSet ThreeTypes() { return LabelSet({"COURT", "STATUTE", "JUDGE"}, LabelKind::kEntity); }

NerConfig DeskConfig() {
  NerConfig c;
  c.desk.hidden = 16;
  c.desk.heads = 2;
  c.desk.intermediate = 32;
  c.desk.layers = 1;
  c.desk.hash_buckets = 97;
  c.dropout = 0.0;
  return c;
}

std::vector<std::string> Words(Rng &rng, int n) {
  return Surfaces(Tokenize(testing::RandomText(rng, n)));
}

TEST_CASE("span enumeration order and count") {
  const auto s = EnumerateSpans(3, 2);
  const std::vector<std::pair<int, int>> want = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}};
  REQUIRE(s.size() == want.size());
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].start == want[i].first);
    CHECK(s[i].end == want[i].second);
  }
  CHECK(s[4].positions == std::vector<int>{2, 3});
  CHECK(EnumerateSpans(1, 16).size() == 1);
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(20));
    const int w = 1 + static_cast<int>(rng.UniformInt(20));
    int expected = 0;
    for (int k = 1; k <= std::min(w, n); ++k) expected += n - k + 1;
    const auto spans = EnumerateSpans(n, w);
    CHECK(static_cast<int>(spans.size()) == expected);
    CHECK(std::set<SpanCandidate>(spans.begin(), spans.end()).size() == spans.size());
  }
  CHECK_THROWS_AS(EnumerateSpans(0, 3), ContractError);
}

TEST_CASE("windows cover the sequence with the given stride") {
  CHECK(Windows(40, 100, 50) == std::vector<std::pair<int, int>>{{0, 40}});
  CHECK(Windows(250, 100, 50) ==
        std::vector<std::pair<int, int>>{{0, 100}, {50, 150}, {100, 200}, {150, 250}});
  CHECK(Windows(0, 100, 50) == std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("negative sampling avoids gold spans") {
  const auto cands = EnumerateSpans(10, 4);
  const std::vector<SpanCandidate> gold = {MakeSpan(1, 2), MakeSpan(5, 5)};
  Rng a(3), b(3);
  const auto n1 = SampleNegatives(cands, gold, 6, a);
  CHECK(n1.size() == 6);
  CHECK(n1 == SampleNegatives(cands, gold, 6, b));
  for (const auto &s : n1) CHECK(std::find(gold.begin(), gold.end(), s) == gold.end());
  CHECK(std::set<SpanCandidate>(n1.begin(), n1.end()).size() == 6);
  Rng c(4);
  CHECK(SampleNegatives(EnumerateSpans(2, 2), {MakeSpan(0, 0)}, 10, c).size() == 2);
}

TEST_CASE("overlap resolution rules") {
  std::vector<SpanPrediction> p = {{MakeSpan(0, 1), 1, 0.9}, {MakeSpan(3, 4), 2, 0.8}};
  CHECK(ResolveOverlaps(p).size() == 2);
  p = {{MakeSpan(2, 3), 1, 1.0}, {MakeSpan(0, 5), 2, 2.0}};
  auto kept = ResolveOverlaps(p);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].span == MakeSpan(0, 5));
  p = {{MakeSpan(0, 5), kNone, 9.0}, {MakeSpan(2, 3), 1, 1.0}};
  kept = ResolveOverlaps(p);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].span == MakeSpan(2, 3));
  // Score ties: earlier start, then shorter.
  p = {{MakeSpan(1, 3), 1, 1.0}, {MakeSpan(0, 2), 1, 1.0}};
  CHECK(ResolveOverlaps(p)[0].span == MakeSpan(0, 2));
  p = {{MakeSpan(0, 3), 1, 1.0}, {MakeSpan(0, 1), 1, 1.0}};
  CHECK(ResolveOverlaps(p)[0].span == MakeSpan(0, 1));
}

TEST_CASE("overlap resolution matches a greedy checker on random inputs") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SpanPrediction> p;
    const int m = static_cast<int>(rng.UniformInt(12));
    for (int i = 0; i < m; ++i) {
      const int s = static_cast<int>(rng.UniformInt(15));
      const int e = s + static_cast<int>(rng.UniformInt(4));
      p.push_back({MakeSpan(s, e), static_cast<int>(rng.UniformInt(4)),
                   static_cast<double>(rng.UniformInt(5))});
    }
    const auto kept = ResolveOverlaps(p);
    auto overlaps = [](const SpanCandidate &a, const SpanCandidate &b) {
      return a.start <= b.end && b.start <= a.end;
    };
    auto before = [](const SpanPrediction &a, const SpanPrediction &b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.span.start != b.span.start) return a.span.start < b.span.start;
      return a.span.width() < b.span.width();
    };
    for (size_t i = 0; i < kept.size(); ++i) {
      CHECK(kept[i].label != kNone);
      for (size_t j = i + 1; j < kept.size(); ++j) CHECK(!overlaps(kept[i].span, kept[j].span));
    }
    // A positive prediction is missing only if a kept span that overlaps it
    // comes no later in the greedy order.
    for (const auto &q : p) {
      if (q.label == kNone) continue;
      bool found = false, blocked = false;
      for (const auto &k : kept) {
        if (k.span == q.span && k.label == q.label && k.score == q.score) found = true;
        if (overlaps(k.span, q.span) && !before(q, k)) blocked = true;
      }
      CHECK((found || blocked));
    }
  }
}

TEST_CASE("entity position components are sums of word position embeddings") {
  Rng rng(6);
  nn::ParameterStore store;
  DeskEncoderConfig dc;
  dc.hidden = 8;
  dc.heads = 2;
  dc.layers = 1;
  dc.hash_buckets = 31;
  DeskEntityEncoder enc(dc, store, "e", rng);
  // Zero token and type tables isolate the position component.
  enc.tables().token->value().setZero();
  enc.tables().entity_token->value().setZero();
  enc.tables().type->value().setZero();
  const Matrix &pos = enc.tables().position->value();
  const auto tokens = Words(rng, 6);
  std::vector<SpanCandidate> slots = {MakeSpan(1, 2), MakeSpan(3, 3)};
  nn::Graph g(false);
  const auto c = ComposeEmbeddings(g, enc.tables(), enc.MakeInput(tokens, slots));
  CHECK(c.entities.value().row(0) == pos.row(2) + pos.row(3));
  CHECK(c.entities.value().row(1) == c.words.value().row(3));
  for (Eigen::Index n = 0; n < c.words.rows(); ++n) CHECK(c.words.value().row(n) == pos.row(n + 1));
  enc.tables().position->value().setZero();
  nn::Graph g2(false);
  const auto z = ComposeEmbeddings(g2, enc.tables(), enc.MakeInput(tokens, slots));
  CHECK(z.words.value().isZero(0.0));
  CHECK(z.entities.value().isZero(0.0));
  WordEntityInput bad = enc.MakeInput(tokens, slots);
  bad.entity_positions[0].push_back(1000);
  CHECK_THROWS_AS(ComposeEmbeddings(g2, enc.tables(), bad), ContractError);
}

TEST_CASE("entity-aware encoding couples words and entities") {
  Rng rng(7);
  nn::ParameterStore store;
  DeskEncoderConfig dc;
  dc.hidden = 8;
  dc.heads = 2;
  dc.layers = 1;
  dc.hash_buckets = 31;
  dc.dropout = 0.0;
  DeskEntityEncoder enc(dc, store, "e", rng);
  auto tokens = Words(rng, 7);
  nn::Graph g(false);
  const auto none = enc.Encode(g, tokens, {});
  CHECK(none.entities.rows() == 0);
  CHECK(none.words.rows() == static_cast<Eigen::Index>(tokens.size()));
  const std::vector<SpanCandidate> slots = {MakeSpan(0, 1), MakeSpan(2, 4), MakeSpan(5, 5)};
  const Matrix he = enc.Encode(g, tokens, slots).entities.value();
  tokens[6] = tokens[6] + "x";
  const Matrix he2 = enc.Encode(g, tokens, slots).entities.value();
  for (Eigen::Index m = 0; m < 3; ++m) CHECK((he.row(m) - he2.row(m)).cwiseAbs().maxCoeff() > 1e-9);
  const std::vector<SpanCandidate> perm = {slots[2], slots[0], slots[1]};
  const Matrix hp = enc.Encode(g, tokens, perm).entities.value();
  CHECK((hp.row(0) - he2.row(2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((hp.row(1) - he2.row(0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((hp.row(2) - he2.row(1)).cwiseAbs().maxCoeff() < 1e-12);
}

NerDocument MakeDoc(const std::string &text, std::vector<EntitySpan> spans) {
  NerDocument d;
  d.doc_id = "d";
  d.text = text;
  d.spans = std::move(spans);
  FillSurfaces(d.spans, d.text);
  return d;
}

TEST_CASE("zero heads predict nothing") {
  const NerDocument doc = MakeDoc("The High Court of Delhi held under Section 302 today.", {});
  for (HeadKind head : {HeadKind::kEntitySpan, HeadKind::kSpanBoundary}) {
    NerConfig cfg = DeskConfig();
    cfg.head = head;
    NerModel model(cfg, ThreeTypes(), 8);
    model.output_layer().weight().value().setZero();
    model.output_layer().bias()->value().setZero();
    const NerExample ex = model.Prepare(doc);
    for (const auto &p : model.PredictWindow(ex.windows[0])) CHECK(p.label == kNone);
    CHECK(model.Predict(ex, doc.text).empty());
  }
  NerConfig cfg = DeskConfig();
  cfg.head = HeadKind::kTokenCrf;
  NerModel crf(cfg, ThreeTypes(), 9);
  crf.output_layer().weight().value().setZero();
  crf.output_layer().bias()->value().setZero();
  crf.output_layer().bias()->value()(0, bio::kOutside) = 5.0;
  CHECK(crf.Predict(crf.Prepare(doc), doc.text).empty());
}

TEST_CASE("windowing keeps gold spans and prepares BIO tags") {
  NerConfig cfg = DeskConfig();
  cfg.max_len = 6;
  cfg.stride = 3;
  NerModel model(cfg, ThreeTypes(), 10);
  //                  0   1    2     3  4    5     6  7      8   9
  const std::string text = "In the High Court of Delhi under Section 302 today";
  const NerDocument doc = MakeDoc(text, {{7, 17, 0, ""}, {33, 44, 1, ""}});
  const NerExample ex = model.Prepare(doc);
  REQUIRE(ex.windows.size() == 3);
  CHECK(ex.windows[0].gold.size() == 1);
  CHECK(ex.windows[0].gold[0].start == 2);
  CHECK(ex.windows[0].gold[0].end == 3);
  CHECK(ex.windows[0].tags[2] == bio::Begin(0));
  CHECK(ex.windows[2].offset == 6);
  REQUIRE(ex.windows[2].gold.size() == 1);
  CHECK(ex.windows[2].gold[0].start == 1);
  CHECK(model.Prepare(MakeDoc("", {})).windows.empty());
  CHECK(TagRuns({0, 1, 2, 0, 4, 3}).size() == 3);
}

TEST_CASE("oracle head gives perfect spans through the pipeline") {
  const std::string text = "In the High Court of Delhi under Section 302 today";
  const NerDocument doc = MakeDoc(text, {{7, 17, 0, ""}, {33, 44, 1, ""}});
  NerModel model(DeskConfig(), ThreeTypes(), 11);
  const NerExample ex = model.Prepare(doc);
  std::vector<SpanPrediction> preds;
  for (const auto &s : ex.windows[0].gold) preds.push_back({MakeSpan(s.start, s.end), s.label + 1, 1.0});
  for (const auto &c : EnumerateSpans(10, 3)) preds.push_back({c, kNone, 0.5});
  const auto kept = ResolveOverlaps(preds);
  REQUIRE(kept.size() == 2);
  CHECK(ex.tokens[static_cast<size_t>(kept[0].span.start)].start_char == 7);
  CHECK(ex.tokens[static_cast<size_t>(kept[1].span.end)].end_char == 44);
}

TEST_CASE("span-boundary head recovers a single example") {
  NerConfig cfg = DeskConfig();
  cfg.head = HeadKind::kSpanBoundary;
  cfg.encoder.hash_dim = 16;
  NerModel model(cfg, ThreeTypes(), 12);
  const std::string text = "The appeal before the High Court was dismissed";
  const NerDocument doc = MakeDoc(text, {{22, 32, 0, ""}});
  const NerExample ex = model.Prepare(doc);
  const auto params = model.store().All();
  for (int step = 0; step < 300; ++step) {
    model.store().ZeroGrad();
    nn::Graph g(true);
    Rng sampler(static_cast<uint64_t>(step));
    g.Backward(model.Loss(g, ex.windows[0], &sampler));
    for (auto *p : params) {
      if (!p->frozen()) p->value() -= 0.5 * p->grad();
    }
  }
  const auto spans = model.Predict(ex, text);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].start_char == 22);
  CHECK(spans[0].end_char == 32);
  CHECK(spans[0].label == 0);
  CHECK(spans[0].surface == "High Court");
}

TEST_CASE("candidate pruning keeps at most max_entities slots") {
  NerConfig cfg = DeskConfig();
  cfg.max_entities = 7;
  NerModel model(cfg, ThreeTypes(), 13);
  Rng rng(14);
  NerWindow w;
  w.tokens = Words(rng, 10);
  const auto preds = model.PredictWindow(w);
  CHECK(preds.size() == 7);
  nn::Graph g(false);
  const auto all = EnumerateSpans(static_cast<int>(w.tokens.size()), cfg.max_span_width);
  CHECK(model.SpanLogits(g, w, all).rows() == static_cast<Eigen::Index>(all.size()));
}

TEST_CASE("ner config and checkpoints round-trip") {
  NerConfig cfg = DeskConfig();
  cfg.negative_ratio = 2.5;
  const NerConfig back = NerConfig::FromConfig(cfg.ToConfig());
  CHECK(back.negative_ratio == 2.5);
  CHECK(back.desk.hidden == 16);
  Config bad;
  bad.Set("model.head", "entity_span");
  bad.Set("encoder.backend", "bert-base");
  CHECK_THROWS_AS(NerConfig::FromConfig(bad), ConfigError);

  const fs::path dir = fs::temp_directory_path() / "legalseq_ner_ckpt";
  fs::create_directories(dir);
  for (HeadKind head : {HeadKind::kEntitySpan, HeadKind::kTokenCrf, HeadKind::kSpanBoundary}) {
    NerConfig c = DeskConfig();
    c.head = head;
    NerModel model(c, ThreeTypes(), 15);
    model.output_layer().bias()->value().setConstant(0.25);
    model.Save(dir / "n.ckpt");
    const LabelSet labels = ThreeTypes();
    auto loaded = NerModel::Load(dir / "n.ckpt", &labels);
    const NerDocument doc = MakeDoc("The High Court of Delhi held", {});
    const NerExample a = model.Prepare(doc), b = loaded->Prepare(doc);
    const auto pa = model.PredictWindow(a.windows[0]);
    const auto pb = loaded->PredictWindow(b.windows[0]);
    REQUIRE(pa.size() == pb.size());
    for (size_t i = 0; i < pa.size(); ++i) CHECK(pa[i].score == pb[i].score);
    const LabelSet other({"COURT", "STATUTE"}, LabelKind::kEntity);
    CHECK_THROWS_AS(NerModel::Load(dir / "n.ckpt", &other), ConfigError);
  }
  fs::remove_all(dir);
}

TEST_CASE("pretrained LUKE entity rows match the reference") {
  const fs::path fixture = fs::path(LEGALSEQ_SOURCE_DIR) / "tests" / "fixtures" / "tiny_luke";
  const auto expected = nlohmann::json::parse(ReadTextFile(fixture / "expected.json"));
  nn::ParameterStore store;
  LukeEntityEncoder enc("luke", fixture, store, false, true);
  const auto tokens = expected["sentence"].get<std::vector<std::string>>();
  nn::Graph g(false);
  const auto r = enc.Encode(g, tokens, {MakeSpan(1, 2), MakeSpan(13, 14)});
  const auto want = expected["entity_hidden"].get<std::vector<std::vector<double>>>();
  REQUIRE(r.entities.rows() == 2);
  double worst = 0.0;
  for (size_t m = 0; m < 2; ++m) {
    for (size_t c = 0; c < want[m].size(); ++c) {
      worst = std::max(worst, std::abs(r.entities.value()(static_cast<Eigen::Index>(m),
                                                          static_cast<Eigen::Index>(c)) - want[m][c]));
    }
  }
  CHECK(worst < 2e-5);
  CHECK(r.words.rows() == static_cast<Eigen::Index>(tokens.size()));
  CHECK(enc.Fit(tokens) == static_cast<int>(tokens.size()));
}

}  // namespace
}  // namespace legalseq::ner
