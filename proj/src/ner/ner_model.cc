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

#include "legalseq/ner/ner_model.h"

#include <algorithm>
#include <cmath>

#include "legalseq/base/errors.h"
#include "legalseq/hsln/hsln.h"
#include "legalseq/nn/checkpoint.h"
#include "legalseq/nn/ops.h"

namespace legalseq::ner {
namespace {

constexpr char kNerKind[] = "ner";

int PositiveInt(const Config &c, const std::string &key, long def) {
  const long v = c.GetInt(key, def);
  if (v < 1 || v > 10'000'000) {
    throw ConfigError(key + " must be a positive integer, got " + std::to_string(v));
  }
  return static_cast<int>(v);
}

bool EntityAwareBackend(const std::string &id) {
  return id == "hash" || id == "luke" || id == "mluke" || id == "legal-luke" || id == "pretrained";
}

nn::RowVector SoftmaxRow(const nn::RowVector &x) {
  const nn::RowVector e = (x.array() - x.maxCoeff()).exp().matrix();
  return e / e.sum();
}

}  // namespace

const char *HeadKindName(HeadKind kind) {
  switch (kind) {
    case HeadKind::kEntitySpan: return "entity_span";
    case HeadKind::kTokenCrf: return "token_crf";
    case HeadKind::kSpanBoundary: return "span_boundary";
  }
  return "?";
}

HeadKind ParseHeadKind(const std::string &name) {
  for (HeadKind k : {HeadKind::kEntitySpan, HeadKind::kTokenCrf, HeadKind::kSpanBoundary}) {
    if (name == HeadKindName(k)) return k;
  }
  throw ConfigError("unknown NER head '" + name +
                    "' (known: entity_span, token_crf, span_boundary)");
}

void NerConfig::Validate() const {
  if (max_len < 1 || stride < 1 || stride > max_len) {
    throw ConfigError("need 1 <= model.stride <= model.max_len");
  }
  if (max_span_width < 1 || max_entities < 1) {
    throw ConfigError("model.max_span_width and model.max_entities must be positive");
  }
  if (!(negative_ratio >= 0.0) || !std::isfinite(negative_ratio)) {
    throw ConfigError("model.negative_ratio must be a non-negative number");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("model.dropout must lie in [0, 1)");
  if (token_layers < 0) throw ConfigError("model.token_layers must be non-negative");
  if (desk.hidden < 1 || desk.heads < 1 || desk.hidden % desk.heads != 0) {
    throw ConfigError("model.hidden must be a positive multiple of model.heads");
  }
  if (head == HeadKind::kEntitySpan && !EntityAwareBackend(encoder.id)) {
    throw ConfigError("the entity_span head needs an entity-aware backend (hash, luke, mluke, "
                      "legal-luke or pretrained), got '" + encoder.id + "'");
  }
}

NerConfig NerConfig::FromConfig(const Config &c) {
  NerConfig n;
  n.head = ParseHeadKind(c.GetString("model.head", HeadKindName(n.head)));
  n.max_len = PositiveInt(c, "model.max_len", n.max_len);
  n.stride = PositiveInt(c, "model.stride", n.stride);
  n.max_span_width = PositiveInt(c, "model.max_span_width", n.max_span_width);
  n.max_entities = PositiveInt(c, "model.max_entities", n.max_entities);
  n.negative_ratio = c.GetDouble("model.negative_ratio", n.negative_ratio);
  n.dropout = c.GetDouble("model.dropout", n.dropout);
  n.token_layers = static_cast<int>(c.GetInt("model.token_layers", n.token_layers));
  n.width_dim = PositiveInt(c, "model.width_dim", n.width_dim);
  n.entity_position_mean = c.GetBool("model.entity_position_mean", n.entity_position_mean);
  n.desk.hidden = PositiveInt(c, "model.hidden", n.desk.hidden);
  n.desk.heads = PositiveInt(c, "model.heads", n.desk.heads);
  n.desk.intermediate = PositiveInt(c, "model.intermediate", n.desk.intermediate);
  n.desk.layers = PositiveInt(c, "model.layers", n.desk.layers);
  n.desk.hash_buckets = PositiveInt(c, "model.hash_buckets", n.desk.hash_buckets);
  n.encoder = hsln::BackendOptionsFromConfig(c);
  n.desk.max_len = n.max_len;
  n.desk.dropout = n.dropout;
  n.desk.hash_seed = n.encoder.hash_seed;
  n.Validate();
  return n;
}

Config NerConfig::ToConfig() const {
  Config c;
  c.Set("model.head", HeadKindName(head));
  c.Set("model.max_len", std::to_string(max_len));
  c.Set("model.stride", std::to_string(stride));
  c.Set("model.max_span_width", std::to_string(max_span_width));
  c.Set("model.max_entities", std::to_string(max_entities));
  c.Set("model.negative_ratio", FormatDouble(negative_ratio));
  c.Set("model.dropout", FormatDouble(dropout));
  c.Set("model.token_layers", std::to_string(token_layers));
  c.Set("model.width_dim", std::to_string(width_dim));
  c.Set("model.entity_position_mean", entity_position_mean ? "true" : "false");
  c.Set("model.hidden", std::to_string(desk.hidden));
  c.Set("model.heads", std::to_string(desk.heads));
  c.Set("model.intermediate", std::to_string(desk.intermediate));
  c.Set("model.layers", std::to_string(desk.layers));
  c.Set("model.hash_buckets", std::to_string(desk.hash_buckets));
  hsln::BackendOptionsToConfig(encoder, c);
  return c;
}

std::vector<TokenSpan> TagRuns(const std::vector<int> &tags) {
  const std::vector<int> t = RepairBio(tags);
  std::vector<TokenSpan> out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!bio::IsBegin(t[i])) continue;
    const int label = bio::LabelOf(t[i]);
    size_t j = i;
    while (j + 1 < t.size() && t[j + 1] == bio::Inside(label)) ++j;
    out.push_back({static_cast<int>(i), static_cast<int>(j), label});
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------

NerModel::NerModel(NerConfig config, LabelSet labels, uint64_t seed)
    : config_(std::move(config)), labels_(std::move(labels)) {
  config_.desk.max_len = config_.max_len;
  config_.desk.dropout = config_.dropout;
  config_.desk.hash_seed = config_.encoder.hash_seed;
  config_.Validate();
  if (labels_.size() < 1) throw ConfigError("empty label set");
  Rng rng(seed);
  const int classes = num_classes();
  if (config_.head == HeadKind::kEntitySpan) {
    if (config_.encoder.id == "hash") {
      entity_encoder_ = std::make_unique<DeskEntityEncoder>(config_.desk, store_, "entity_encoder", rng);
    } else {
      const auto dir = ResolveWeightsDir(config_.encoder);
      if (dir.empty() || !std::filesystem::is_directory(dir)) {
        throw ConfigError("backend '" + config_.encoder.id +
                          "' needs pretrained weights: set encoder.weights or "
                          "LEGALSEQ_WEIGHTS_DIR (looked in '" + dir.string() + "')");
      }
      entity_encoder_ = std::make_unique<LukeEntityEncoder>(
          config_.encoder.id, dir, store_, config_.encoder.trainable, config_.entity_position_mean);
    }
    output_ = nn::Linear(store_, "span_head", entity_encoder_->dim(), classes, rng);
    return;
  }
  token_backend_ = CreateBackend(config_.encoder, store_);
  const int d = token_backend_->dim();
  if (config_.token_layers > 0) {
    nn::TransformerConfig tc;
    tc.hidden = d;
    tc.heads = d % config_.desk.heads == 0 ? config_.desk.heads : 1;
    tc.intermediate = 2 * d;
    tc.layers = config_.token_layers;
    tc.dropout = config_.dropout;
    token_layers_ = nn::TransformerEncoder(store_, "token_layers", tc, rng);
  }
  if (config_.head == HeadKind::kTokenCrf) {
    const int tags = bio::NumTags(labels_);
    output_ = nn::Linear(store_, "tag_head", d, tags, rng);
    transitions_ = &store_.Create("crf.transitions", nn::Matrix::Zero(tags, tags), false);
    start_ = &store_.Create("crf.start", nn::Matrix::Zero(1, tags), false);
    end_ = &store_.Create("crf.end", nn::Matrix::Zero(1, tags), false);
  } else {
    width_ = &store_.Create("boundary.width",
                            nn::NormalInit(config_.max_span_width, config_.width_dim, 0.02, rng));
    output_ = nn::Linear(store_, "boundary_head", 2 * d + config_.width_dim, classes, rng);
  }
}

NerExample NerModel::Prepare(const NerDocument &doc, AlignmentPolicy policy) const {
  NerExample ex;
  ex.doc_id = doc.doc_id;
  ex.tokens = Tokenize(doc.text);
  const int n = static_cast<int>(ex.tokens.size());
  if (n == 0) return ex;
  const TagSequence tagged = ToBio(ex.tokens, doc.spans, labels_, policy);
  const std::vector<TokenSpan> gold = TagRuns(tagged.tags);
  for (const auto &[b, e] : Windows(n, config_.max_len, config_.stride)) {
    NerWindow w;
    w.offset = b;
    for (int i = b; i < e; ++i) w.tokens.push_back(ex.tokens[static_cast<size_t>(i)].surface);
    w.tags = RepairBio(std::vector<int>(tagged.tags.begin() + b, tagged.tags.begin() + e));
    for (const auto &s : gold) {
      if (s.start >= b && s.end < e) w.gold.push_back({s.start - b, s.end - b, s.label});
    }
    if (token_backend_ && !token_backend_->trainable()) {
      const int usable = UsableTokens(w);
      const nn::Matrix rows =
          EncodeTokens(w.tokens, *token_backend_, static_cast<int>(w.tokens.size()) + 2).vectors;
      w.encoded = rows.middleRows(1, usable);
      w.has_cache = true;
    }
    ex.windows.push_back(std::move(w));
  }
  return ex;
}

int NerModel::UsableTokens(const NerWindow &window) const {
  if (entity_encoder_) return entity_encoder_->Fit(window.tokens);
  if (window.has_cache) return static_cast<int>(window.encoded.rows());
  const TokenSequence seq = WrapTokens(window.tokens, static_cast<int>(window.tokens.size()) + 2);
  return static_cast<int>(token_backend_->Fit(seq)) - 2;
}

nn::Var NerModel::TokenRows(nn::Graph &g, const NerWindow &window) const {
  nn::Var rows;
  if (window.has_cache) {
    rows = g.Constant(window.encoded);
  } else {
    const int usable = UsableTokens(window);
    std::vector<std::string> kept(window.tokens.begin(), window.tokens.begin() + usable);
    nn::Var h = token_backend_->Encode(g, WrapTokens(kept, usable + 2));
    rows = nn::SliceRows(h, 1, usable);
  }
  rows = nn::Dropout(rows, config_.dropout);
  if (config_.token_layers > 0) rows = token_layers_.Forward(g, rows);
  return rows;
}

std::vector<SpanCandidate> NerModel::TrainingSlots(const NerWindow &window,
                                                   std::vector<int> *targets,
                                                   Rng *sampler) const {
  const int usable = UsableTokens(window);
  std::vector<SpanCandidate> slots;
  targets->clear();
  for (const auto &s : window.gold) {
    if (s.end >= usable) continue;
    slots.push_back(MakeSpan(s.start, s.end));
    targets->push_back(s.label + 1);
  }
  if (usable < 1) return slots;
  const size_t want = static_cast<size_t>(
      std::ceil(config_.negative_ratio * static_cast<double>(std::max<size_t>(slots.size(), 1))));
  Rng fixed(static_cast<uint64_t>(window.offset) + 1);
  const auto negatives = SampleNegatives(EnumerateSpans(usable, config_.max_span_width), slots,
                                         want, sampler ? *sampler : fixed);
  for (const auto &s : negatives) {
    slots.push_back(s);
    targets->push_back(kNone);
  }
  return slots;
}

nn::Var NerModel::SpanLogits(nn::Graph &g, const NerWindow &window,
                             const std::vector<SpanCandidate> &slots) const {
  if (slots.empty()) throw ContractError("SpanLogits: no slots");
  if (config_.head == HeadKind::kTokenCrf) {
    throw ContractError("SpanLogits: the token_crf head scores tags, not spans");
  }
  const int usable = UsableTokens(window);
  for (const auto &s : slots) {
    if (s.start < 0 || s.end >= usable) throw ContractError("span outside the usable tokens");
  }
  if (config_.head == HeadKind::kEntitySpan) {
    const std::vector<std::string> kept(window.tokens.begin(), window.tokens.begin() + usable);
    std::vector<nn::Var> parts;
    for (size_t b = 0; b < slots.size(); b += static_cast<size_t>(config_.max_entities)) {
      const size_t e = std::min(slots.size(), b + static_cast<size_t>(config_.max_entities));
      const std::vector<SpanCandidate> group(slots.begin() + static_cast<long>(b),
                                             slots.begin() + static_cast<long>(e));
      nn::Var h = entity_encoder_->Encode(g, kept, group).entities;
      parts.push_back(output_.Forward(g, nn::Dropout(h, config_.dropout)));
    }
    return parts.size() == 1 ? parts[0] : nn::ConcatRows(parts);
  }
  nn::Var rows = TokenRows(g, window);
  std::vector<int> starts, ends, widths;
  for (const auto &s : slots) {
    starts.push_back(s.start);
    ends.push_back(s.end);
    widths.push_back(std::min(s.width(), config_.max_span_width) - 1);
  }
  nn::Var repr = nn::ConcatCols({nn::Gather(rows, starts), nn::Gather(rows, ends),
                                 nn::Gather(g.Param(*width_), widths)});
  return output_.Forward(g, nn::Dropout(repr, config_.dropout));
}

nn::Var NerModel::TagEmissions(nn::Graph &g, const NerWindow &window) const {
  if (config_.head != HeadKind::kTokenCrf) throw ContractError("TagEmissions: not a token_crf model");
  return output_.Forward(g, TokenRows(g, window));
}

crf::CrfParams NerModel::CrfParameters() const {
  if (!transitions_) throw ContractError("CrfParameters: not a token_crf model");
  crf::CrfParams p;
  p.transitions = transitions_->value();
  p.start = start_->value().row(0);
  p.end = end_->value().row(0);
  return p;
}

nn::Var NerModel::Loss(nn::Graph &g, const NerWindow &window, Rng *sampler) const {
  const int usable = UsableTokens(window);
  if (usable < 1) return g.Constant(nn::Matrix::Zero(1, 1));
  if (config_.head == HeadKind::kTokenCrf) {
    std::vector<int> tags(window.tags.begin(), window.tags.begin() + usable);
    return crf::NllNode(TagEmissions(g, window), g.Param(*transitions_), g.Param(*start_),
                        g.Param(*end_), RepairBio(tags));
  }
  std::vector<int> targets;
  const auto slots = TrainingSlots(window, &targets, sampler);
  if (slots.empty()) return g.Constant(nn::Matrix::Zero(1, 1));
  return nn::SoftmaxCrossEntropy(SpanLogits(g, window, slots), targets);
}

std::vector<SpanPrediction> NerModel::PredictWindow(const NerWindow &window) const {
  const int usable = UsableTokens(window);
  std::vector<SpanPrediction> out;
  if (usable < 1) return out;
  nn::Graph g(false, false);
  if (config_.head == HeadKind::kTokenCrf) {
    const nn::Matrix em = TagEmissions(g, window).value();
    const crf::CrfParams params = CrfParameters();
    const auto tags = RepairBio(crf::Viterbi(em, params).path);
    const nn::Matrix marg = crf::Marginals(em, params);
    for (const auto &r : TagRuns(tags)) {
      out.push_back({MakeSpan(r.start, r.end), r.label + 1, marg(r.start, tags[static_cast<size_t>(r.start)])});
    }
    return out;
  }
  std::vector<SpanCandidate> cands = EnumerateSpans(usable, config_.max_span_width);
  if (config_.head == HeadKind::kEntitySpan &&
      cands.size() > static_cast<size_t>(config_.max_entities)) {
    // First pass: keep the candidates least likely to be NONE.
    const nn::Matrix first = SpanLogits(g, window, cands).value();
    std::vector<std::pair<double, size_t>> none;
    for (size_t i = 0; i < cands.size(); ++i) {
      none.emplace_back(SoftmaxRow(first.row(static_cast<Eigen::Index>(i)))(kNone), i);
    }
    std::stable_sort(none.begin(), none.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    none.resize(static_cast<size_t>(config_.max_entities));
    std::vector<size_t> keep;
    for (const auto &p : none) keep.push_back(p.second);
    std::sort(keep.begin(), keep.end());
    std::vector<SpanCandidate> pruned;
    for (size_t i : keep) pruned.push_back(cands[i]);
    cands = std::move(pruned);
  }
  const nn::Matrix logits = SpanLogits(g, window, cands).value();
  const std::vector<int> labels = hsln::ArgmaxRows(logits);
  for (size_t i = 0; i < cands.size(); ++i) {
    const nn::RowVector p = SoftmaxRow(logits.row(static_cast<Eigen::Index>(i)));
    out.push_back({cands[i], labels[i], p(labels[i])});
  }
  return out;
}

std::vector<EntitySpan> NerModel::Predict(const NerExample &example, const std::string &text) const {
  std::vector<SpanPrediction> all;
  for (const auto &w : example.windows) {
    for (auto p : PredictWindow(w)) {
      if (p.label == kNone) continue;
      p.span = MakeSpan(p.span.start + w.offset, p.span.end + w.offset);
      all.push_back(std::move(p));
    }
  }
  std::vector<EntitySpan> spans;
  for (const auto &p : ResolveOverlaps(std::move(all))) {
    EntitySpan s;
    s.start_char = example.tokens[static_cast<size_t>(p.span.start)].start_char;
    s.end_char = example.tokens[static_cast<size_t>(p.span.end)].end_char;
    s.label = p.label - 1;
    spans.push_back(std::move(s));
  }
  FillSurfaces(spans, text);
  return spans;
}

void NerModel::Save(const std::filesystem::path &path) const {
  const std::string backend = config_.encoder.id;
  nn::SaveCheckpoint(path, {kNerKind, config_.ToConfig(), labels_, backend}, store_);
}

std::unique_ptr<NerModel> NerModel::Load(const std::filesystem::path &path,
                                         const LabelSet *expected,
                                         const std::filesystem::path &weights_dir) {
  auto ck = nn::ReadCheckpoint(path);
  if (ck.meta.model_kind != kNerKind) {
    throw ConfigError(path.string() + " holds a '" + ck.meta.model_kind +
                      "' model, not an NER model");
  }
  if (expected) nn::RequireSameLabels(*expected, ck.meta.labels);
  NerConfig config = NerConfig::FromConfig(ck.meta.config);
  if (!weights_dir.empty()) config.encoder.weights_dir = weights_dir;
  auto model = std::make_unique<NerModel>(config, ck.meta.labels, 0);
  nn::RestoreParameters(ck.archive, model->store_);
  return model;
}

}  // namespace legalseq::ner
