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

#ifndef LEGALSEQ_NER_NER_MODEL_H_
#define LEGALSEQ_NER_NER_MODEL_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "legalseq/base/config.h"
#include "legalseq/corpus/bio.h"
#include "legalseq/corpus/document.h"
#include "legalseq/crf/crf.h"
#include "legalseq/encoder/encoder.h"
#include "legalseq/ner/entity_encoder.h"
#include "legalseq/ner/spans.h"

namespace legalseq::ner {

enum class HeadKind {
  kEntitySpan,    // entity-aware encoder, linear over entity rows
  kTokenCrf,      // token encoder, BIO emissions, CRF
  kSpanBoundary,  // token encoder, [start; end; width] span representation
};
const char *HeadKindName(HeadKind kind);
HeadKind ParseHeadKind(const std::string &name);

struct NerConfig {
  HeadKind head = HeadKind::kEntitySpan;
  int max_len = 100;
  int stride = 50;
  int max_span_width = 16;
  int max_entities = 128;
  double negative_ratio = 3.0;
  double dropout = 0.1;
  // Extra transformer layers over a token backend (token heads only).
  int token_layers = 0;
  int width_dim = 16;
  // Average instead of sum the position embeddings of an entity slot
  // (pretrained LUKE weights were trained with the average).
  bool entity_position_mean = false;
  DeskEncoderConfig desk;
  BackendOptions encoder;

  void Validate() const;
  static NerConfig FromConfig(const Config &config);
  Config ToConfig() const;
};

// A gold entity in token coordinates.
struct TokenSpan {
  int start = 0;
  int end = 0;  // inclusive
  int label = 0;
};

// One window of a document.
struct NerWindow {
  std::vector<std::string> tokens;
  int offset = 0;  // index of tokens[0] in the document's token list
  std::vector<TokenSpan> gold;
  std::vector<int> tags;  // BIO tags over tokens
  nn::Matrix encoded;     // cached token-backend rows (frozen backends)
  bool has_cache = false;
};

struct NerExample {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<NerWindow> windows;
};

// Gold entities as maximal BIO runs.
std::vector<TokenSpan> TagRuns(const std::vector<int> &tags);

class NerModel {
 public:
  NerModel(NerConfig config, LabelSet labels, uint64_t seed);

  const NerConfig &config() const { return config_; }
  const LabelSet &labels() const { return labels_; }
  nn::ParameterStore &store() { return store_; }
  int num_classes() const { return labels_.size() + 1; }

  NerExample Prepare(const NerDocument &doc,
                     AlignmentPolicy policy = AlignmentPolicy::kExpand) const;

  // Training loss of one window. `sampler` draws negative spans; it may be
  // null for a fixed draw.
  nn::Var Loss(nn::Graph &g, const NerWindow &window, Rng *sampler) const;

  // Scores of spans of one window: (slots x classes) logits.
  nn::Var SpanLogits(nn::Graph &g, const NerWindow &window,
                     const std::vector<SpanCandidate> &slots) const;
  // Token-CRF head: (tokens x tags) emissions.
  nn::Var TagEmissions(nn::Graph &g, const NerWindow &window) const;
  crf::CrfParams CrfParameters() const;

  // Window predictions in window token coordinates, before overlap
  // resolution.
  std::vector<SpanPrediction> PredictWindow(const NerWindow &window) const;
  // Non-overlapping entities of a whole document in character offsets.
  std::vector<EntitySpan> Predict(const NerExample &example, const std::string &text) const;

  // Linear map producing class scores (span heads) or tag emissions.
  nn::Linear &output_layer() { return output_; }
  const EntityAwareEncoder *entity_encoder() const { return entity_encoder_.get(); }

  void Save(const std::filesystem::path &path) const;
  static std::unique_ptr<NerModel> Load(const std::filesystem::path &path,
                                        const LabelSet *expected = nullptr,
                                        const std::filesystem::path &weights_dir = {});

 private:
  int UsableTokens(const NerWindow &window) const;
  nn::Var TokenRows(nn::Graph &g, const NerWindow &window) const;
  std::vector<SpanCandidate> TrainingSlots(const NerWindow &window, std::vector<int> *targets,
                                           Rng *sampler) const;

  NerConfig config_;
  LabelSet labels_;
  nn::ParameterStore store_;
  std::unique_ptr<EntityAwareEncoder> entity_encoder_;
  std::unique_ptr<EncoderBackend> token_backend_;
  nn::TransformerEncoder token_layers_;
  nn::Parameter *width_ = nullptr;
  nn::Linear output_;
  nn::Parameter *transitions_ = nullptr;
  nn::Parameter *start_ = nullptr;
  nn::Parameter *end_ = nullptr;
};

}  // namespace legalseq::ner

#endif  // LEGALSEQ_NER_NER_MODEL_H_
