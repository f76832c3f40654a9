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

#include "legalseq/hsln/hsln.h"

#include "legalseq/base/errors.h"
#include "legalseq/nn/checkpoint.h"

namespace legalseq::hsln {
namespace {

constexpr char kHslnKind[] = "hsln";
constexpr char kIndependentKind[] = "independent";

void CheckDropout(double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("model.dropout must lie in [0, 1), got " + std::to_string(rate));
  }
}

int PositiveInt(const Config &c, const std::string &key, long def) {
  const long v = c.GetInt(key, def);
  if (v < 1 || v > 1'000'000) {
    throw ConfigError(key + " must be a positive integer, got " + std::to_string(v));
  }
  return static_cast<int>(v);
}

}  // namespace

BackendOptions BackendOptionsFromConfig(const Config &config) {
  BackendOptions o;
  o.id = config.GetString("encoder.backend", o.id);
  o.weights_dir = config.GetString("encoder.weights", "");
  o.trainable = config.GetBool("encoder.trainable", o.trainable);
  o.hash_dim = PositiveInt(config, "encoder.hash_dim", o.hash_dim);
  o.hash_seed = static_cast<uint64_t>(config.GetInt("encoder.hash_seed", 0));
  return o;
}

void BackendOptionsToConfig(const BackendOptions &o, Config &config) {
  config.Set("encoder.backend", o.id);
  if (!o.weights_dir.empty()) config.Set("encoder.weights", o.weights_dir.string());
  config.Set("encoder.trainable", o.trainable ? "true" : "false");
  config.Set("encoder.hash_dim", std::to_string(o.hash_dim));
  config.Set("encoder.hash_seed", std::to_string(o.hash_seed));
}

std::vector<std::vector<std::string>> SentenceTokens(const Document &doc) {
  std::vector<std::vector<std::string>> out;
  out.reserve(doc.sentences.size());
  for (const auto &s : doc.sentences) out.push_back(Surfaces(TokenizeSentence(s)));
  return out;
}

std::vector<int> GoldLabels(const Document &doc) {
  std::vector<int> gold;
  gold.reserve(doc.sentences.size());
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    if (!doc.sentences[i].rr_label) {
      throw ContractError("document " + doc.doc_id + ": sentence " + std::to_string(i) +
                          " has no rhetorical-role label");
    }
    gold.push_back(*doc.sentences[i].rr_label);
  }
  return gold;
}

std::vector<int> ArgmaxRows(const nn::Matrix &scores) {
  std::vector<int> out(static_cast<size_t>(scores.rows()), 0);
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    int best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(r, c) > scores(r, best)) best = static_cast<int>(c);
    }
    out[static_cast<size_t>(r)] = best;
  }
  return out;
}

std::vector<std::pair<int, int>> ChunkRanges(int n, int max_len, int overlap) {
  if (max_len < 1 || overlap < 0 || overlap >= max_len) {
    throw ContractError("chunking needs max_len >= 1 and 0 <= overlap < max_len");
  }
  std::vector<std::pair<int, int>> out;
  if (n <= max_len) {
    out.emplace_back(0, n);
    return out;
  }
  const int step = max_len - overlap;
  for (int begin = 0;; begin += step) {
    const int end = std::min(n, begin + max_len);
    out.emplace_back(begin, end);
    if (end == n) break;
  }
  return out;
}

std::vector<int> OwningChunks(int n, const std::vector<std::pair<int, int>> &chunks) {
  std::vector<int> owner(static_cast<size_t>(n), -1);
  std::vector<int> best(static_cast<size_t>(n), -1);
  for (size_t c = 0; c < chunks.size(); ++c) {
    const auto [b, e] = chunks[c];
    for (int i = b; i < e; ++i) {
      const int margin = std::min(i - b, e - 1 - i);
      if (margin > best[static_cast<size_t>(i)]) {
        best[static_cast<size_t>(i)] = margin;
        owner[static_cast<size_t>(i)] = static_cast<int>(c);
      }
    }
  }
  return owner;
}

// ---------------------------------------------------------------------------

void HslnConfig::Validate() const {
  if (max_sentence_len < 2) throw ConfigError("model.max_sentence_len must be at least 2");
  if (word_rnn_hidden < 1 || sent_rnn_hidden < 1) {
    throw ConfigError("recurrent hidden sizes must be positive");
  }
  CheckDropout(dropout_rate);
  if (max_doc_sentences < 1 || chunk_overlap < 0 || chunk_overlap >= max_doc_sentences) {
    throw ConfigError("need model.max_doc_sentences >= 1 and 0 <= model.chunk_overlap < "
                      "model.max_doc_sentences");
  }
}

HslnConfig HslnConfig::FromConfig(const Config &c) {
  HslnConfig h;
  h.max_sentence_len = PositiveInt(c, "model.max_sentence_len", h.max_sentence_len);
  h.word_rnn_hidden = PositiveInt(c, "model.word_rnn_hidden", h.word_rnn_hidden);
  h.sent_rnn_hidden = PositiveInt(c, "model.sent_rnn_hidden", h.sent_rnn_hidden);
  h.dropout_rate = c.GetDouble("model.dropout", h.dropout_rate);
  h.pooling = ParsePoolingKind(c.GetString("model.pooling", PoolingKindName(h.pooling)));
  h.max_doc_sentences = PositiveInt(c, "model.max_doc_sentences", h.max_doc_sentences);
  h.chunk_overlap = static_cast<int>(c.GetInt("model.chunk_overlap", h.chunk_overlap));
  h.encoder = BackendOptionsFromConfig(c);
  h.Validate();
  return h;
}

Config HslnConfig::ToConfig() const {
  Config c;
  c.Set("model.max_sentence_len", std::to_string(max_sentence_len));
  c.Set("model.word_rnn_hidden", std::to_string(word_rnn_hidden));
  c.Set("model.sent_rnn_hidden", std::to_string(sent_rnn_hidden));
  c.Set("model.dropout", FormatDouble(dropout_rate));
  c.Set("model.pooling", PoolingKindName(pooling));
  c.Set("model.max_doc_sentences", std::to_string(max_doc_sentences));
  c.Set("model.chunk_overlap", std::to_string(chunk_overlap));
  BackendOptionsToConfig(encoder, c);
  return c;
}

HslnModel::HslnModel(HslnConfig config, LabelSet labels, uint64_t seed)
    : config_(std::move(config)), labels_(std::move(labels)) {
  config_.Validate();
  if (labels_.size() < 1) throw ConfigError("empty label set");
  backend_ = CreateBackend(config_.encoder, store_);
  Rng rng(seed);
  const int d = backend_->dim();
  word_rnn_ = nn::BiLstm(store_, "word_rnn", d, config_.word_rnn_hidden, rng);
  pooler_ = Pooler(config_.pooling, store_, "pool", word_rnn_.output_dim(), rng);
  sent_rnn_ = nn::BiLstm(store_, "sent_rnn", word_rnn_.output_dim(), config_.sent_rnn_hidden, rng);
  output_ = nn::Linear(store_, "output", sent_rnn_.output_dim(), labels_.size(), rng);
  const int k = labels_.size();
  transitions_ = &store_.Create("crf.transitions", nn::Matrix::Zero(k, k), false);
  start_ = &store_.Create("crf.start", nn::Matrix::Zero(1, k), false);
  end_ = &store_.Create("crf.end", nn::Matrix::Zero(1, k), false);
}

DocumentInput HslnModel::Prepare(const Document &doc) const {
  return Prepare(SentenceTokens(doc));
}

DocumentInput HslnModel::Prepare(std::vector<std::vector<std::string>> sentences) const {
  DocumentInput in;
  in.sentences = std::move(sentences);
  if (!backend_->trainable()) {
    in.encoded.reserve(in.sentences.size());
    for (const auto &s : in.sentences) {
      in.encoded.push_back(EncodeTokens(s, *backend_, config_.max_sentence_len).vectors);
    }
  }
  return in;
}

nn::Var HslnModel::EncodeSentence(nn::Graph &g, const DocumentInput &doc, size_t i) const {
  if (i < doc.encoded.size()) return g.Constant(doc.encoded[i]);
  TokenSequence seq = WrapTokens(doc.sentences.at(i), config_.max_sentence_len);
  const size_t fit = backend_->Fit(seq);
  if (fit < seq.size()) seq = WrapTokens(doc.sentences[i], static_cast<int>(fit));
  return backend_->Encode(g, seq);
}

nn::Var HslnModel::EnrichTokens(nn::Graph &g, nn::Var encoded) const {
  if (encoded.rows() == 0) throw ContractError("EnrichTokens: empty encoder output");
  return nn::Dropout(word_rnn_.Forward(g, nn::Dropout(encoded, config_.dropout_rate)),
                     config_.dropout_rate);
}

nn::Var HslnModel::EmbedSentence(nn::Graph &g, nn::Var augmented) const {
  return nn::Dropout(pooler_.Forward(g, augmented), config_.dropout_rate);
}

nn::Var HslnModel::ContextualizeSentences(nn::Graph &g, nn::Var sentence_rows) const {
  if (sentence_rows.rows() == 0) throw ContractError("ContextualizeSentences: no sentences");
  return nn::Dropout(sent_rnn_.Forward(g, sentence_rows), config_.dropout_rate);
}

nn::Var HslnModel::Emissions(nn::Graph &g, const DocumentInput &doc, int begin, int end) const {
  if (begin < 0 || end > static_cast<int>(doc.sentences.size()) || begin >= end) {
    throw ContractError("Emissions: bad sentence range");
  }
  std::vector<nn::Var> rows;
  rows.reserve(static_cast<size_t>(end - begin));
  for (int i = begin; i < end; ++i) {
    rows.push_back(EmbedSentence(g, EnrichTokens(g, EncodeSentence(g, doc, static_cast<size_t>(i)))));
  }
  return output_.Forward(g, ContextualizeSentences(g, nn::ConcatRows(rows)));
}

nn::Var HslnModel::Loss(nn::Graph &g, const DocumentInput &doc,
                        const std::vector<int> &gold) const {
  const int n = static_cast<int>(doc.sentences.size());
  if (static_cast<int>(gold.size()) != n) {
    throw ContractError("Loss: " + std::to_string(gold.size()) + " labels for " +
                        std::to_string(n) + " sentences");
  }
  for (int y : gold) {
    if (!labels_.Contains(y)) throw ContractError("Loss: label index out of range");
  }
  nn::Var total;
  for (const auto &[b, e] : ChunkRanges(n, config_.max_doc_sentences, config_.chunk_overlap)) {
    nn::Var nll = crf::NllNode(Emissions(g, doc, b, e), g.Param(*transitions_),
                               g.Param(*start_), g.Param(*end_),
                               std::vector<int>(gold.begin() + b, gold.begin() + e));
    total = total.valid() ? nn::Add(total, nll) : nll;
  }
  return total;
}

crf::CrfParams HslnModel::CrfParameters() const {
  crf::CrfParams p;
  p.transitions = transitions_->value();
  p.start = start_->value().row(0);
  p.end = end_->value().row(0);
  return p;
}

nn::Matrix HslnModel::DocumentEmissions(const DocumentInput &doc) const {
  const int n = static_cast<int>(doc.sentences.size());
  nn::Matrix out(n, labels_.size());
  if (n == 0) return out;
  const auto chunks = ChunkRanges(n, config_.max_doc_sentences, config_.chunk_overlap);
  const auto owner = OwningChunks(n, chunks);
  for (size_t c = 0; c < chunks.size(); ++c) {
    nn::Graph g(false, false);
    const auto [b, e] = chunks[c];
    const nn::Matrix em = Emissions(g, doc, b, e).value();
    for (int i = b; i < e; ++i) {
      if (owner[static_cast<size_t>(i)] == static_cast<int>(c)) out.row(i) = em.row(i - b);
    }
  }
  return out;
}

std::vector<int> HslnModel::Predict(const DocumentInput &doc) const {
  const int n = static_cast<int>(doc.sentences.size());
  std::vector<int> labels(static_cast<size_t>(n), 0);
  if (n == 0) return labels;
  const crf::CrfParams params = CrfParameters();
  const auto chunks = ChunkRanges(n, config_.max_doc_sentences, config_.chunk_overlap);
  const auto owner = OwningChunks(n, chunks);
  for (size_t c = 0; c < chunks.size(); ++c) {
    nn::Graph g(false, false);
    const auto [b, e] = chunks[c];
    const auto path = crf::Viterbi(Emissions(g, doc, b, e).value(), params).path;
    for (int i = b; i < e; ++i) {
      if (owner[static_cast<size_t>(i)] == static_cast<int>(c)) {
        labels[static_cast<size_t>(i)] = path[static_cast<size_t>(i - b)];
      }
    }
  }
  return labels;
}

void HslnModel::Save(const std::filesystem::path &path) const {
  nn::SaveCheckpoint(path, {kHslnKind, config_.ToConfig(), labels_, backend_->id()}, store_);
}

std::unique_ptr<HslnModel> HslnModel::Load(const std::filesystem::path &path,
                                           const LabelSet *expected,
                                           const std::filesystem::path &weights_dir) {
  auto ck = nn::ReadCheckpoint(path);
  if (ck.meta.model_kind != kHslnKind) {
    throw ConfigError(path.string() + " holds a '" + ck.meta.model_kind +
                      "' model, not an HSLN model");
  }
  if (expected) nn::RequireSameLabels(*expected, ck.meta.labels);
  HslnConfig config = HslnConfig::FromConfig(ck.meta.config);
  if (!weights_dir.empty()) config.encoder.weights_dir = weights_dir;
  auto model = std::make_unique<HslnModel>(config, ck.meta.labels, 0);
  nn::RestoreParameters(ck.archive, model->store_);
  return model;
}

// ---------------------------------------------------------------------------

void IndependentConfig::Validate() const {
  if (max_len < 2) throw ConfigError("model.max_len must be at least 2");
  if (hidden < 1) throw ConfigError("model.hidden must be positive");
  if (pooling == PoolingKind::kAttention) {
    throw ConfigError("the independent classifier pools by first_token or mean");
  }
  CheckDropout(dropout_rate);
}

IndependentConfig IndependentConfig::FromConfig(const Config &c) {
  IndependentConfig h;
  h.pooling = ParsePoolingKind(c.GetString("model.pooling", PoolingKindName(h.pooling)));
  h.max_len = PositiveInt(c, "model.max_len", h.max_len);
  h.hidden = PositiveInt(c, "model.hidden", h.hidden);
  h.dropout_rate = c.GetDouble("model.dropout", h.dropout_rate);
  h.encoder = BackendOptionsFromConfig(c);
  h.Validate();
  return h;
}

Config IndependentConfig::ToConfig() const {
  Config c;
  c.Set("model.pooling", PoolingKindName(pooling));
  c.Set("model.max_len", std::to_string(max_len));
  c.Set("model.hidden", std::to_string(hidden));
  c.Set("model.dropout", FormatDouble(dropout_rate));
  BackendOptionsToConfig(encoder, c);
  return c;
}

IndependentClassifier::IndependentClassifier(IndependentConfig config, LabelSet labels,
                                             uint64_t seed)
    : config_(std::move(config)), labels_(std::move(labels)) {
  config_.Validate();
  if (labels_.size() < 1) throw ConfigError("empty label set");
  backend_ = CreateBackend(config_.encoder, store_);
  Rng rng(seed);
  pooler_ = Pooler(config_.pooling, store_, "pool", backend_->dim(), rng);
  hidden_ = nn::Linear(store_, "mlp.hidden", backend_->dim(), config_.hidden, rng);
  output_ = nn::Linear(store_, "mlp.output", config_.hidden, labels_.size(), rng);
}

DocumentInput IndependentClassifier::Prepare(const Document &doc) const {
  return Prepare(SentenceTokens(doc));
}

DocumentInput IndependentClassifier::Prepare(
    std::vector<std::vector<std::string>> sentences) const {
  DocumentInput in;
  in.sentences = std::move(sentences);
  if (!backend_->trainable()) {
    for (const auto &s : in.sentences) {
      in.encoded.push_back(EncodeTokens(s, *backend_, config_.max_len).vectors);
    }
  }
  return in;
}

nn::Var IndependentClassifier::EncodeSentence(nn::Graph &g, const DocumentInput &doc,
                                              size_t i) const {
  if (i < doc.encoded.size()) return g.Constant(doc.encoded[i]);
  TokenSequence seq = WrapTokens(doc.sentences.at(i), config_.max_len);
  const size_t fit = backend_->Fit(seq);
  if (fit < seq.size()) seq = WrapTokens(doc.sentences[i], static_cast<int>(fit));
  return backend_->Encode(g, seq);
}

nn::Var IndependentClassifier::Logits(nn::Graph &g, const DocumentInput &doc) const {
  std::vector<nn::Var> rows;
  rows.reserve(doc.sentences.size());
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    nn::Var pooled = nn::Dropout(pooler_.Forward(g, EncodeSentence(g, doc, i)),
                                 config_.dropout_rate);
    nn::Var h = nn::Dropout(nn::Tanh(hidden_.Forward(g, pooled)), config_.dropout_rate);
    rows.push_back(output_.Forward(g, h));
  }
  return nn::ConcatRows(rows);
}

nn::Var IndependentClassifier::Loss(nn::Graph &g, const DocumentInput &doc,
                                    const std::vector<int> &gold) const {
  if (gold.size() != doc.sentences.size()) {
    throw ContractError("Loss: label count differs from sentence count");
  }
  return nn::SoftmaxCrossEntropy(Logits(g, doc), gold);
}

std::vector<int> IndependentClassifier::Predict(const DocumentInput &doc) const {
  if (doc.sentences.empty()) return {};
  nn::Graph g(false, false);
  return ArgmaxRows(Logits(g, doc).value());
}

void IndependentClassifier::Save(const std::filesystem::path &path) const {
  nn::SaveCheckpoint(path, {kIndependentKind, config_.ToConfig(), labels_, backend_->id()},
                     store_);
}

std::unique_ptr<IndependentClassifier> IndependentClassifier::Load(
    const std::filesystem::path &path, const LabelSet *expected,
    const std::filesystem::path &weights_dir) {
  auto ck = nn::ReadCheckpoint(path);
  if (ck.meta.model_kind != kIndependentKind) {
    throw ConfigError(path.string() + " holds a '" + ck.meta.model_kind +
                      "' model, not an independent classifier");
  }
  if (expected) nn::RequireSameLabels(*expected, ck.meta.labels);
  IndependentConfig config = IndependentConfig::FromConfig(ck.meta.config);
  if (!weights_dir.empty()) config.encoder.weights_dir = weights_dir;
  auto model = std::make_unique<IndependentClassifier>(config, ck.meta.labels, 0);
  nn::RestoreParameters(ck.archive, model->store_);
  return model;
}

std::unique_ptr<RrModel> LoadRrModel(const std::filesystem::path &path,
                                     const LabelSet *expected,
                                     const std::filesystem::path &weights_dir) {
  const std::string kind = nn::ReadCheckpoint(path).meta.model_kind;
  if (kind == kHslnKind) return HslnModel::Load(path, expected, weights_dir);
  if (kind == kIndependentKind) return IndependentClassifier::Load(path, expected, weights_dir);
  throw ConfigError(path.string() + " holds a '" + kind + "' model, not a rhetorical-role model");
}

}  // namespace legalseq::hsln
