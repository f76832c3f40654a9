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

#include "legalseq/encoder/pretrained.h"

#include <algorithm>
#include <json.hpp>
#include <map>

#include "legalseq/base/errors.h"
#include "legalseq/base/tensor_archive.h"
#include "legalseq/corpus/corpus_io.h"
#include "legalseq/nn/ops.h"

namespace legalseq {
namespace {

using json = nlohmann::json;
using nn::Matrix;
namespace fs = std::filesystem;

class WeightSource {
 public:
  explicit WeightSource(const fs::path &dir) {
    std::vector<fs::path> files;
    if (fs::is_directory(dir)) {
      for (const auto &e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".safetensors") files.push_back(e.path());
      }
    }
    if (files.empty()) {
      throw ConfigError("no *.safetensors weights in " + dir.string() +
                        " (PyTorch .bin archives must be converted first)");
    }
    std::sort(files.begin(), files.end());
    for (const auto &f : files) {
      TensorArchive archive = TensorArchive::Read(f);
      for (const auto &[name, entry] : archive.tensors()) tensors_[name] = entry.value;
    }
    for (const char *prefix : {"", "bert.", "roberta.", "luke.", "model.", "encoder."}) {
      if (tensors_.count(std::string(prefix) + "embeddings.word_embeddings.weight")) {
        prefix_ = prefix;
        return;
      }
    }
    throw ConfigError("weights in " + dir.string() +
                      " lack embeddings.word_embeddings.weight");
  }

  bool Has(const std::string &name) const { return tensors_.count(prefix_ + name) > 0; }

  const Matrix &Get(const std::string &name) const {
    auto it = tensors_.find(prefix_ + name);
    if (it == tensors_.end()) throw ConfigError("pretrained weights lack '" + prefix_ + name + "'");
    return it->second;
  }

 private:
  std::map<std::string, Matrix> tensors_;
  std::string prefix_;
};

void Assign(nn::Parameter &param, const Matrix &value, const std::string &source) {
  if (param.value().rows() != value.rows() || param.value().cols() != value.cols()) {
    throw ConfigError("pretrained tensor '" + source + "' has shape " +
                      std::to_string(value.rows()) + "x" + std::to_string(value.cols()) +
                      ", expected " + std::to_string(param.value().rows()) + "x" +
                      std::to_string(param.value().cols()));
  }
  param.value() = value;
}

// Hugging Face linear layers store (out x in); ours are (in x out).
void AssignLinear(nn::Linear &linear, const WeightSource &w, const std::string &hf) {
  Assign(linear.weight(), w.Get(hf + ".weight").transpose(), hf + ".weight");
  if (linear.bias()) Assign(*linear.bias(), w.Get(hf + ".bias"), hf + ".bias");
}

void AssignNorm(nn::LayerNorm &norm, const WeightSource &w, const std::string &hf) {
  Assign(norm.gain(), w.Get(hf + ".weight"), hf + ".weight");
  Assign(norm.bias(), w.Get(hf + ".bias"), hf + ".bias");
}

int EntityMaskId(const fs::path &dir) {
  const fs::path path = dir / "entity_vocab.json";
  if (!fs::exists(path)) return 2;
  const json vocab = json::parse(ReadTextFile(path));
  if (vocab.is_object() && vocab.contains("[MASK]")) return vocab["[MASK]"].get<int>();
  if (vocab.is_array()) {
    for (const json &e : vocab) {
      for (const json &name : e.value("entities", json::array())) {
        if (name.is_array() && name[0] == "[MASK]") return e.at("id").get<int>();
      }
    }
  }
  return 2;
}

}  // namespace

int PretrainedConfig::position_offset() const {
  if (model_type == "roberta" || model_type == "xlm-roberta" ||
      model_type == "camembert" || model_type == "luke") {
    return pad_token_id + 1;
  }
  return 0;
}

PretrainedConfig PretrainedConfig::Load(const fs::path &config_json) {
  if (!fs::exists(config_json)) throw ConfigError("missing " + config_json.string());
  const json j = json::parse(ReadTextFile(config_json));
  PretrainedConfig c;
  c.model_type = j.value("model_type", "bert");
  c.vocab_size = j.at("vocab_size").get<int>();
  c.hidden_size = j.at("hidden_size").get<int>();
  c.num_layers = j.at("num_hidden_layers").get<int>();
  c.num_heads = j.at("num_attention_heads").get<int>();
  c.intermediate_size = j.at("intermediate_size").get<int>();
  c.max_positions = j.value("max_position_embeddings", 512);
  c.type_vocab_size = j.value("type_vocab_size", 2);
  c.pad_token_id = j.value("pad_token_id", 0);
  c.layer_norm_eps = j.value("layer_norm_eps", 1e-12);
  c.dropout = j.value("hidden_dropout_prob", 0.1);
  c.entity_vocab_size = j.value("entity_vocab_size", 0);
  c.entity_emb_size = j.value("entity_emb_size", c.hidden_size);
  c.entity_aware_attention = j.value("use_entity_aware_attention", false);
  const std::string act = j.value("hidden_act", "gelu");
  if (act != "gelu") {
    throw ConfigError(config_json.string() + ": unsupported activation '" + act + "'");
  }
  if (c.hidden_size % c.num_heads != 0) {
    throw ConfigError(config_json.string() + ": hidden size not divisible by heads");
  }
  return c;
}

PretrainedEncoder::PretrainedEncoder(const fs::path &dir, nn::ParameterStore &store,
                                     const std::string &name, bool trainable) {
  config_ = PretrainedConfig::Load(dir / "config.json");
  tokenizer_ = SubwordTokenizer::Load(dir);
  if (tokenizer_->cls_id() < 0 || tokenizer_->sep_id() < 0) {
    throw ConfigError("tokenizer in " + dir.string() + " lacks start/end tokens");
  }
  const WeightSource w(dir);
  const size_t first_param = store.All().size();
  const int h = config_.hidden_size;

  word_ = &store.Create(name + ".embeddings.word", w.Get("embeddings.word_embeddings.weight"), false);
  position_ = &store.Create(name + ".embeddings.position",
                            w.Get("embeddings.position_embeddings.weight"), false);
  type_ = &store.Create(name + ".embeddings.type",
                        w.Has("embeddings.token_type_embeddings.weight")
                            ? w.Get("embeddings.token_type_embeddings.weight")
                            : Matrix::Zero(1, h),
                        false);
  norm_ = nn::LayerNorm(store, name + ".embeddings.norm", h, config_.layer_norm_eps);
  AssignNorm(norm_, w, "embeddings.LayerNorm");

  nn::TransformerConfig tc;
  tc.hidden = h;
  tc.heads = config_.num_heads;
  tc.intermediate = config_.intermediate_size;
  tc.layers = config_.num_layers;
  tc.dropout = config_.dropout;
  tc.layer_norm_eps = config_.layer_norm_eps;
  Rng placeholder(0);
  encoder_ = nn::TransformerEncoder(store, name + ".encoder", tc, placeholder);
  for (int i = 0; i < config_.num_layers; ++i) {
    nn::TransformerLayer &layer = encoder_.layers()[static_cast<size_t>(i)];
    const std::string base = "encoder.layer." + std::to_string(i) + ".";
    AssignLinear(layer.query, w, base + "attention.self.query");
    AssignLinear(layer.key, w, base + "attention.self.key");
    AssignLinear(layer.value, w, base + "attention.self.value");
    AssignLinear(layer.attention_output, w, base + "attention.output.dense");
    AssignNorm(layer.attention_norm, w, base + "attention.output.LayerNorm");
    AssignLinear(layer.intermediate, w, base + "intermediate.dense");
    AssignLinear(layer.output, w, base + "output.dense");
    AssignNorm(layer.output_norm, w, base + "output.LayerNorm");
  }

  if (w.Has("entity_embeddings.entity_embeddings.weight")) {
    entity_table_ = &store.Create(name + ".entity.table",
                                  w.Get("entity_embeddings.entity_embeddings.weight"), false);
    if (w.Has("entity_embeddings.entity_embedding_dense.weight")) {
      entity_dense_ = &store.Create(
          name + ".entity.dense",
          w.Get("entity_embeddings.entity_embedding_dense.weight").transpose());
    }
    entity_position_ = &store.Create(name + ".entity.position",
                                     w.Get("entity_embeddings.position_embeddings.weight"), false);
    entity_type_ = &store.Create(name + ".entity.type",
                                 w.Get("entity_embeddings.token_type_embeddings.weight"), false);
    entity_norm_ = nn::LayerNorm(store, name + ".entity.norm", h, config_.layer_norm_eps);
    AssignNorm(entity_norm_, w, "entity_embeddings.LayerNorm");
    entity_mask_id_ = EntityMaskId(dir);
  }

  const auto all = store.All();
  for (size_t i = first_param; i < all.size(); ++i) {
    all[i]->set_group("encoder");
    all[i]->set_frozen(!trainable);
  }
}

nn::Var PretrainedEncoder::EmbedWords(nn::Graph &g, const std::vector<int> &ids,
                                      const std::vector<int> &positions) const {
  std::vector<int> pos(positions);
  for (int &p : pos) {
    p += config_.position_offset();
    if (p < 0 || p >= config_.max_positions) throw ContractError("word position out of range");
  }
  for (int id : ids) {
    if (id < 0 || id >= word_->value().rows()) throw ContractError("token id out of range");
  }
  nn::Var x = nn::Add(nn::Gather(g.Param(*word_), ids), nn::Gather(g.Param(*position_), pos));
  x = nn::AddRow(x, nn::SliceRows(g.Param(*type_), 0, 1));
  return nn::Dropout(norm_.Forward(g, x), config_.dropout);
}

nn::Var PretrainedEncoder::EmbedEntities(nn::Graph &g, const std::vector<int> &entity_ids,
                                         const std::vector<std::vector<int>> &positions,
                                         bool mean_positions) const {
  if (!entity_table_) throw ContractError("encoder has no entity embeddings");
  nn::Var e = nn::Gather(g.Param(*entity_table_), entity_ids);
  if (entity_dense_) e = nn::MatMul(e, g.Param(*entity_dense_));
  std::vector<std::vector<int>> pos = positions;
  for (auto &list : pos) {
    for (int &p : list) p += config_.position_offset();
  }
  nn::Var p = nn::GatherSum(g.Param(*entity_position_), pos);
  if (mean_positions) {
    Matrix scale(static_cast<Eigen::Index>(pos.size()), config_.hidden_size);
    for (size_t m = 0; m < pos.size(); ++m) {
      scale.row(static_cast<Eigen::Index>(m)).setConstant(1.0 / static_cast<double>(pos[m].size()));
    }
    p = nn::Mul(p, g.Constant(std::move(scale)));
  }
  nn::Var x = nn::AddRow(nn::Add(e, p), nn::SliceRows(g.Param(*entity_type_), 0, 1));
  return nn::Dropout(entity_norm_.Forward(g, x), config_.dropout);
}

TransformerBackend::TransformerBackend(std::string id, const fs::path &dir,
                                       nn::ParameterStore &store, bool trainable)
    : id_(std::move(id)), model_(dir, store, "encoder", trainable), trainable_(trainable) {}

void TransformerBackend::Subtokenize(const TokenSequence &seq, std::vector<int> *ids,
                                     std::vector<int> *first) const {
  const SubwordTokenizer &tok = model_.tokenizer();
  ids->clear();
  first->clear();
  for (size_t i = 0; i < seq.size(); ++i) {
    first->push_back(static_cast<int>(ids->size()));
    if (seq.wrapped && i == 0) {
      ids->push_back(tok.cls_id());
    } else if (seq.wrapped && i + 1 == seq.size()) {
      ids->push_back(tok.sep_id());
    } else {
      const auto sub = tok.Encode(seq.tokens[i]);
      ids->insert(ids->end(), sub.begin(), sub.end());
    }
  }
}

size_t TransformerBackend::Fit(const TokenSequence &seq) const {
  const size_t limit = static_cast<size_t>(model_.max_words());
  size_t used = seq.wrapped ? 1 : 0;  // room for the end marker
  const size_t body_end = seq.wrapped ? seq.size() - 1 : seq.size();
  size_t kept = 0;
  for (size_t i = 0; i < body_end; ++i) {
    const size_t n = (seq.wrapped && i == 0) ? 1 : model_.tokenizer().Encode(seq.tokens[i]).size();
    if (used + n > limit) break;
    used += n;
    ++kept;
  }
  return seq.wrapped ? kept + 1 : kept;
}

nn::Var TransformerBackend::Encode(nn::Graph &g, const TokenSequence &seq) const {
  std::vector<int> ids, first;
  Subtokenize(seq, &ids, &first);
  if (static_cast<int>(ids.size()) > model_.max_words()) {
    throw ContractError("sequence of " + std::to_string(ids.size()) +
                        " subwords exceeds the model's " +
                        std::to_string(model_.max_words()) + " positions");
  }
  std::vector<int> positions(ids.size());
  for (size_t i = 0; i < positions.size(); ++i) positions[i] = static_cast<int>(i);
  nn::Var h = model_.Transform(g, model_.EmbedWords(g, ids, positions));
  return nn::Gather(h, first);
}

std::vector<std::string> PretrainedBackendIds() {
  return {"bert-base", "legal-bert", "xlm-roberta", "luke", "mluke", "legal-luke", "pretrained"};
}

}  // namespace legalseq
