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

#include "legalseq/ner/entity_encoder.h"

#include "legalseq/base/errors.h"
#include "legalseq/nn/ops.h"

namespace legalseq::ner {
namespace {

void CheckPositions(const std::vector<int> &positions, Eigen::Index rows) {
  for (int p : positions) {
    if (p < 0 || p >= rows) {
      throw ContractError("position " + std::to_string(p) + " outside the position table");
    }
  }
}

}  // namespace

ComposedEmbeddings ComposeEmbeddings(nn::Graph &g, const EmbeddingTables &t,
                                     const WordEntityInput &in) {
  const size_t n = in.word_ids.size();
  if (in.word_positions.size() != n) throw ContractError("one position per word required");
  if (in.entity_positions.size() != in.entity_ids.size()) {
    throw ContractError("one position list per entity slot required");
  }
  const Eigen::Index rows = t.position->value().rows();
  CheckPositions(in.word_positions, rows);
  for (const auto &ps : in.entity_positions) {
    if (ps.empty()) throw ContractError("entity slot covers no words");
    CheckPositions(ps, rows);
  }
  nn::Var pos = g.Param(*t.position);
  nn::Var type = g.Param(*t.type);
  ComposedEmbeddings out;
  out.words = nn::AddRow(nn::Add(nn::Gather(g.Param(*t.token), in.word_ids),
                                 nn::Gather(pos, in.word_positions)),
                         nn::SliceRows(type, 0, 1));
  if (!in.entity_ids.empty()) {
    out.entities = nn::AddRow(nn::Add(nn::Gather(g.Param(*t.entity_token), in.entity_ids),
                                      nn::GatherSum(pos, in.entity_positions)),
                              nn::SliceRows(type, 1, 1));
  }
  return out;
}

// ---------------------------------------------------------------------------

DeskEntityEncoder::DeskEntityEncoder(const DeskEncoderConfig &config, nn::ParameterStore &store,
                                     const std::string &name, Rng &rng)
    : config_(config) {
  if (config.hidden % config.heads != 0) {
    throw ConfigError("model.hidden must be divisible by model.heads");
  }
  const int d = config.hidden;
  tables_.token = &store.Create(name + ".token", nn::NormalInit(config.hash_buckets, d, 0.02, rng));
  tables_.entity_token = &store.Create(name + ".entity_token", nn::NormalInit(1, d, 0.02, rng));
  tables_.type = &store.Create(name + ".type", nn::NormalInit(2, d, 0.02, rng));
  tables_.position = &store.Create(name + ".position", nn::NormalInit(config.max_len + 1, d, 0.02, rng));
  norm_ = nn::LayerNorm(store, name + ".norm", d);
  nn::TransformerConfig tc;
  tc.hidden = d;
  tc.heads = config.heads;
  tc.intermediate = config.intermediate;
  tc.layers = config.layers;
  tc.dropout = config.dropout;
  encoder_ = nn::TransformerEncoder(store, name + ".encoder", tc, rng);
}

int DeskEntityEncoder::TokenBucket(const std::string &surface) const {
  return static_cast<int>(Fnv1a64(surface.data(), surface.size(), config_.hash_seed) %
                          static_cast<uint64_t>(config_.hash_buckets));
}

int DeskEntityEncoder::Fit(const std::vector<std::string> &tokens) const {
  return std::min(static_cast<int>(tokens.size()), config_.max_len);
}

WordEntityInput DeskEntityEncoder::MakeInput(const std::vector<std::string> &tokens,
                                             const std::vector<SpanCandidate> &slots) const {
  WordEntityInput in;
  for (size_t i = 0; i < tokens.size(); ++i) {
    in.word_ids.push_back(TokenBucket(tokens[i]));
    in.word_positions.push_back(static_cast<int>(i) + 1);
  }
  for (const auto &s : slots) {
    if (s.start < 0 || s.end >= static_cast<int>(tokens.size())) {
      throw ContractError("entity slot outside the token sequence");
    }
    in.entity_ids.push_back(0);
    in.entity_positions.push_back(s.positions);
  }
  return in;
}

ContextualReprs DeskEntityEncoder::Encode(nn::Graph &g, const std::vector<std::string> &tokens,
                                          const std::vector<SpanCandidate> &slots) const {
  if (static_cast<int>(tokens.size()) > config_.max_len) {
    throw ContractError("sequence longer than model.max_len");
  }
  const ComposedEmbeddings c = ComposeEmbeddings(g, tables_, MakeInput(tokens, slots));
  const Eigen::Index n = static_cast<Eigen::Index>(tokens.size());
  nn::Var x = slots.empty() ? c.words : nn::ConcatRows({c.words, c.entities});
  nn::Var h = encoder_.Forward(g, nn::Dropout(norm_.Forward(g, x), config_.dropout));
  ContextualReprs out;
  out.words = nn::SliceRows(h, 0, n);
  out.entities = slots.empty() ? g.Constant(nn::Matrix(0, config_.hidden))
                               : nn::SliceRows(h, n, static_cast<Eigen::Index>(slots.size()));
  return out;
}

// ---------------------------------------------------------------------------

LukeEntityEncoder::LukeEntityEncoder(std::string id, const std::filesystem::path &dir,
                                     nn::ParameterStore &store, bool trainable,
                                     bool mean_positions)
    : backend_(std::move(id), dir, store, trainable), mean_positions_(mean_positions) {
  if (!backend_.model().has_entity_embeddings()) {
    throw ConfigError("weights in " + dir.string() + " carry no entity embeddings");
  }
}

int LukeEntityEncoder::Fit(const std::vector<std::string> &tokens) const {
  const TokenSequence seq = WrapTokens(tokens, static_cast<int>(tokens.size()) + 2);
  return static_cast<int>(backend_.Fit(seq)) - 2;
}

ContextualReprs LukeEntityEncoder::Encode(nn::Graph &g, const std::vector<std::string> &tokens,
                                          const std::vector<SpanCandidate> &slots) const {
  const TokenSequence seq = WrapTokens(tokens, static_cast<int>(tokens.size()) + 2);
  std::vector<int> ids, first;
  backend_.Subtokenize(seq, &ids, &first);
  const PretrainedEncoder &model = backend_.model();
  if (static_cast<int>(ids.size()) > model.max_words()) {
    throw ContractError("sequence exceeds the model's positions");
  }
  std::vector<int> positions(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) positions[i] = static_cast<int>(i);
  nn::Var words = model.EmbedWords(g, ids, positions);
  const Eigen::Index total = static_cast<Eigen::Index>(ids.size());
  nn::Var x = words;
  if (!slots.empty()) {
    std::vector<std::vector<int>> slot_positions;
    for (const auto &s : slots) {
      if (s.start < 0 || s.end >= static_cast<int>(tokens.size())) {
        throw ContractError("entity slot outside the token sequence");
      }
      std::vector<int> ps;
      for (int p = first[static_cast<size_t>(s.start) + 1]; p < first[static_cast<size_t>(s.end) + 2]; ++p) {
        ps.push_back(p);
      }
      slot_positions.push_back(std::move(ps));
    }
    std::vector<int> entity_ids(slots.size(), model.entity_mask_id());
    x = nn::ConcatRows({words, model.EmbedEntities(g, entity_ids, slot_positions, mean_positions_)});
  }
  nn::Var h = model.Transform(g, x);
  std::vector<int> word_rows(first.begin() + 1, first.end() - 1);
  ContextualReprs out;
  out.words = word_rows.empty() ? g.Constant(nn::Matrix(0, dim())) : nn::Gather(h, word_rows);
  out.entities = slots.empty() ? g.Constant(nn::Matrix(0, dim()))
                               : nn::SliceRows(h, total, static_cast<Eigen::Index>(slots.size()));
  return out;
}

}  // namespace legalseq::ner
