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

#ifndef LEGALSEQ_NER_ENTITY_ENCODER_H_
#define LEGALSEQ_NER_ENTITY_ENCODER_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "legalseq/encoder/pretrained.h"
#include "legalseq/ner/spans.h"
#include "legalseq/nn/layers.h"

namespace legalseq::ner {

// Joint word + entity-slot input. Word n sits at position word_positions[n];
// entity slot m at the positions of the words it covers.
struct WordEntityInput {
  std::vector<int> word_ids;
  std::vector<int> word_positions;
  std::vector<int> entity_ids;
  std::vector<std::vector<int>> entity_positions;
};

// Token, entity-token, type (row 0 words, row 1 entities) and position
// tables of the desk-scale entity-aware encoder.
struct EmbeddingTables {
  nn::Parameter *token = nullptr;
  nn::Parameter *entity_token = nullptr;
  nn::Parameter *type = nullptr;
  nn::Parameter *position = nullptr;
};

struct ComposedEmbeddings {
  nn::Var words;     // N x D
  nn::Var entities;  // M x D (absent when M = 0)
};

// word row n = token[w_n] + type[0] + position[p_n];
// entity row m = entity_token[e_m] + type[1] + sum over p of position[p].
ComposedEmbeddings ComposeEmbeddings(nn::Graph &g, const EmbeddingTables &tables,
                                     const WordEntityInput &input);

struct ContextualReprs {
  nn::Var words;     // H_w, N x D
  nn::Var entities;  // H_e, M x D (0 x D when M = 0)
};

// Encodes a token sequence together with entity slots over it; every row
// attends to every row.
class EntityAwareEncoder {
 public:
  virtual ~EntityAwareEncoder() = default;
  virtual int dim() const = 0;
  // Number of leading tokens that can be encoded.
  virtual int Fit(const std::vector<std::string> &tokens) const = 0;
  virtual ContextualReprs Encode(nn::Graph &g, const std::vector<std::string> &tokens,
                                 const std::vector<SpanCandidate> &slots) const = 0;
};

struct DeskEncoderConfig {
  int hidden = 64;
  int heads = 4;
  int intermediate = 128;
  int layers = 2;
  int max_len = 100;
  int hash_buckets = 8192;
  double dropout = 0.1;
  uint64_t hash_seed = 0;
};

// Trainable from scratch: surfaces hash into token buckets, a single
// entity token, then layer norm, dropout and a transformer stack.
class DeskEntityEncoder : public EntityAwareEncoder {
 public:
  DeskEntityEncoder(const DeskEncoderConfig &config, nn::ParameterStore &store,
                    const std::string &name, Rng &rng);

  int dim() const override { return config_.hidden; }
  int Fit(const std::vector<std::string> &tokens) const override;
  ContextualReprs Encode(nn::Graph &g, const std::vector<std::string> &tokens,
                         const std::vector<SpanCandidate> &slots) const override;

  WordEntityInput MakeInput(const std::vector<std::string> &tokens,
                            const std::vector<SpanCandidate> &slots) const;
  const EmbeddingTables &tables() const { return tables_; }
  int TokenBucket(const std::string &surface) const;

 private:
  DeskEncoderConfig config_;
  EmbeddingTables tables_;
  nn::LayerNorm norm_;
  nn::TransformerEncoder encoder_;
};

// Pretrained LUKE-family weights. Each reference token is split into
// subwords; word rows are first-subword rows, and an entity slot covers all
// subwords of its tokens. Entity inputs use the [MASK] entity.
class LukeEntityEncoder : public EntityAwareEncoder {
 public:
  LukeEntityEncoder(std::string id, const std::filesystem::path &dir,
                    nn::ParameterStore &store, bool trainable, bool mean_positions);

  int dim() const override { return backend_.dim(); }
  int Fit(const std::vector<std::string> &tokens) const override;
  ContextualReprs Encode(nn::Graph &g, const std::vector<std::string> &tokens,
                         const std::vector<SpanCandidate> &slots) const override;
  const TransformerBackend &backend() const { return backend_; }

 private:
  TransformerBackend backend_;
  bool mean_positions_;
};

}  // namespace legalseq::ner

#endif  // LEGALSEQ_NER_ENTITY_ENCODER_H_
