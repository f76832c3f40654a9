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

#ifndef LEGALSEQ_ENCODER_PRETRAINED_H_
#define LEGALSEQ_ENCODER_PRETRAINED_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "legalseq/encoder/encoder.h"
#include "legalseq/encoder/subword.h"
#include "legalseq/nn/layers.h"

namespace legalseq {

// The subset of a Hugging Face config.json this toolkit reads.
struct PretrainedConfig {
  std::string model_type;  // bert, roberta, xlm-roberta, camembert, luke
  int vocab_size = 0;
  int hidden_size = 0;
  int num_layers = 0;
  int num_heads = 0;
  int intermediate_size = 0;
  int max_positions = 512;
  int type_vocab_size = 2;
  int pad_token_id = 0;
  double layer_norm_eps = 1e-12;
  double dropout = 0.1;
  // LUKE only.
  int entity_vocab_size = 0;
  int entity_emb_size = 0;
  bool entity_aware_attention = false;

  // RoBERTa-family models number positions from pad_token_id + 1.
  int position_offset() const;
  bool is_luke() const { return model_type == "luke"; }

  static PretrainedConfig Load(const std::filesystem::path &config_json);
};

// Weights of a BERT-family encoder (embeddings + post-norm transformer
// stack), optionally with LUKE entity embeddings, loaded into a
// ParameterStore from *.safetensors files.
class PretrainedEncoder {
 public:
  PretrainedEncoder(const std::filesystem::path &dir, nn::ParameterStore &store,
                    const std::string &name, bool trainable);

  const PretrainedConfig &config() const { return config_; }
  const SubwordTokenizer &tokenizer() const { return *tokenizer_; }

  // Sum of word, position and type-0 embeddings followed by layer norm and
  // dropout. positions are 0-based; the model's offset is added here.
  nn::Var EmbedWords(nn::Graph &g, const std::vector<int> &ids,
                     const std::vector<int> &positions) const;

  // LUKE entity rows: entity embedding (projected when the entity width
  // differs), the position embeddings of each slot's words (summed, or
  // averaged when `mean_positions`), type embedding, norm, dropout.
  nn::Var EmbedEntities(nn::Graph &g, const std::vector<int> &entity_ids,
                        const std::vector<std::vector<int>> &positions,
                        bool mean_positions) const;
  bool has_entity_embeddings() const { return entity_table_ != nullptr; }
  int entity_mask_id() const { return entity_mask_id_; }

  nn::Var Transform(nn::Graph &g, nn::Var x) const { return encoder_.Forward(g, x); }

  // Largest number of word positions the model accepts.
  int max_words() const { return config_.max_positions - config_.position_offset(); }

 private:
  PretrainedConfig config_;
  std::unique_ptr<SubwordTokenizer> tokenizer_;
  nn::Parameter *word_ = nullptr;
  nn::Parameter *position_ = nullptr;
  nn::Parameter *type_ = nullptr;
  nn::LayerNorm norm_;
  nn::TransformerEncoder encoder_;
  nn::Parameter *entity_table_ = nullptr;
  nn::Parameter *entity_dense_ = nullptr;
  nn::Parameter *entity_position_ = nullptr;
  nn::Parameter *entity_type_ = nullptr;
  nn::LayerNorm entity_norm_;
  int entity_mask_id_ = 2;
};

// EncoderBackend over a PretrainedEncoder. Each reference token is split
// into subwords; its output row is the row of its first subword.
class TransformerBackend : public EncoderBackend {
 public:
  TransformerBackend(std::string id, const std::filesystem::path &dir,
                     nn::ParameterStore &store, bool trainable);

  const std::string &id() const override { return id_; }
  int dim() const override { return model_.config().hidden_size; }
  size_t Fit(const TokenSequence &seq) const override;
  nn::Var Encode(nn::Graph &g, const TokenSequence &seq) const override;
  bool trainable() const override { return trainable_; }

  const PretrainedEncoder &model() const { return model_; }

  // Subword ids of a wrapped sequence and the index of each position's
  // first subword.
  void Subtokenize(const TokenSequence &seq, std::vector<int> *ids,
                   std::vector<int> *first) const;

 private:
  std::string id_;
  PretrainedEncoder model_;
  bool trainable_;
};

std::vector<std::string> PretrainedBackendIds();

}  // namespace legalseq

#endif  // LEGALSEQ_ENCODER_PRETRAINED_H_
