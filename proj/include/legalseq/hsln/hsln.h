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

#ifndef LEGALSEQ_HSLN_HSLN_H_
#define LEGALSEQ_HSLN_HSLN_H_

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "legalseq/base/config.h"
#include "legalseq/corpus/document.h"
#include "legalseq/corpus/labels.h"
#include "legalseq/crf/crf.h"
#include "legalseq/encoder/encoder.h"
#include "legalseq/encoder/pooling.h"
#include "legalseq/nn/layers.h"

namespace legalseq::hsln {

struct HslnConfig {
  int max_sentence_len = 32;
  int word_rnn_hidden = 128;
  int sent_rnn_hidden = 128;
  double dropout_rate = 0.5;
  PoolingKind pooling = PoolingKind::kAttention;
  // Documents longer than this are decoded in overlapping chunks.
  int max_doc_sentences = 512;
  int chunk_overlap = 64;
  BackendOptions encoder;

  void Validate() const;
  // Keys under "model." and "encoder.".
  static HslnConfig FromConfig(const Config &config);
  Config ToConfig() const;
};

// Reference tokens of every sentence plus, for frozen encoders, their
// encoded rows (computed once and reused across epochs).
struct DocumentInput {
  std::vector<std::vector<std::string>> sentences;
  std::vector<nn::Matrix> encoded;
};

// Sentence index ranges [begin, end) covering n sentences with windows of
// at most max_len sentences overlapping by `overlap`.
std::vector<std::pair<int, int>> ChunkRanges(int n, int max_len, int overlap);

// For every sentence, the chunk in which it lies furthest from a chunk
// edge; ties go to the earlier chunk.
std::vector<int> OwningChunks(int n, const std::vector<std::pair<int, int>> &chunks);

// Common surface of the rhetorical-role models.
class RrModel {
 public:
  virtual ~RrModel() = default;
  virtual const LabelSet &labels() const = 0;
  virtual nn::ParameterStore &store() = 0;
  virtual DocumentInput Prepare(const Document &doc) const = 0;
  virtual nn::Var Loss(nn::Graph &g, const DocumentInput &doc,
                       const std::vector<int> &gold) const = 0;
  virtual std::vector<int> Predict(const DocumentInput &doc) const = 0;
  virtual void Save(const std::filesystem::path &path) const = 0;
};

// Encoder, dropout, word BiLSTM, dropout, pooling, dropout, sentence
// BiLSTM, dropout, linear map to label scores, CRF over the document.
class HslnModel : public RrModel {
 public:
  HslnModel(HslnConfig config, LabelSet labels, uint64_t seed);

  const HslnConfig &config() const { return config_; }
  const LabelSet &labels() const override { return labels_; }
  nn::ParameterStore &store() override { return store_; }
  const EncoderBackend &backend() const { return *backend_; }

  DocumentInput Prepare(const Document &doc) const override;
  DocumentInput Prepare(std::vector<std::vector<std::string>> sentences) const;

  // Encoder rows of sentence i (m x D), from the cache when present.
  nn::Var EncodeSentence(nn::Graph &g, const DocumentInput &doc, size_t i) const;
  // m x 2H augmented token embeddings.
  nn::Var EnrichTokens(nn::Graph &g, nn::Var encoded) const;
  // 1 x 2H.
  nn::Var EmbedSentence(nn::Graph &g, nn::Var augmented) const;
  // n x 2H' from the n stacked sentence embeddings.
  nn::Var ContextualizeSentences(nn::Graph &g, nn::Var sentence_rows) const;
  // Emissions of sentences [begin, end) processed as one sequence.
  nn::Var Emissions(nn::Graph &g, const DocumentInput &doc, int begin, int end) const;

  // CRF nll, summed over chunks for long documents.
  nn::Var Loss(nn::Graph &g, const DocumentInput &doc,
               const std::vector<int> &gold) const override;

  crf::CrfParams CrfParameters() const;
  // Full-document emissions in inference mode; rows of long documents come
  // from their owning chunk.
  nn::Matrix DocumentEmissions(const DocumentInput &doc) const;
  std::vector<int> Predict(const DocumentInput &doc) const override;

  nn::Linear &output_layer() { return output_; }
  const Pooler &pooler() const { return pooler_; }

  void Save(const std::filesystem::path &path) const override;
  // `expected` (when given) must equal the stored label set.
  static std::unique_ptr<HslnModel> Load(const std::filesystem::path &path,
                                         const LabelSet *expected = nullptr,
                                         const std::filesystem::path &weights_dir = {});

 private:
  HslnConfig config_;
  LabelSet labels_;
  nn::ParameterStore store_;
  std::unique_ptr<EncoderBackend> backend_;
  nn::BiLstm word_rnn_;
  Pooler pooler_;
  nn::BiLstm sent_rnn_;
  nn::Linear output_;
  nn::Parameter *transitions_ = nullptr;
  nn::Parameter *start_ = nullptr;
  nn::Parameter *end_ = nullptr;
};

struct IndependentConfig {
  PoolingKind pooling = PoolingKind::kFirstToken;
  int max_len = 128;
  int hidden = 128;
  double dropout_rate = 0.1;
  BackendOptions encoder;

  void Validate() const;
  static IndependentConfig FromConfig(const Config &config);
  Config ToConfig() const;
};

// Sentence-by-sentence baseline: pooled encoder output, one-hidden-layer
// perceptron, argmax. A sentence's label never depends on its neighbours.
class IndependentClassifier : public RrModel {
 public:
  IndependentClassifier(IndependentConfig config, LabelSet labels, uint64_t seed);

  const IndependentConfig &config() const { return config_; }
  const LabelSet &labels() const override { return labels_; }
  nn::ParameterStore &store() override { return store_; }
  const EncoderBackend &backend() const { return *backend_; }

  DocumentInput Prepare(const Document &doc) const override;
  DocumentInput Prepare(std::vector<std::vector<std::string>> sentences) const;

  // n x K logits, one row per sentence.
  nn::Var Logits(nn::Graph &g, const DocumentInput &doc) const;
  nn::Var Loss(nn::Graph &g, const DocumentInput &doc,
               const std::vector<int> &gold) const override;
  std::vector<int> Predict(const DocumentInput &doc) const override;

  nn::Linear &output_layer() { return output_; }

  void Save(const std::filesystem::path &path) const override;
  static std::unique_ptr<IndependentClassifier> Load(
      const std::filesystem::path &path, const LabelSet *expected = nullptr,
      const std::filesystem::path &weights_dir = {});

 private:
  nn::Var EncodeSentence(nn::Graph &g, const DocumentInput &doc, size_t i) const;

  IndependentConfig config_;
  LabelSet labels_;
  nn::ParameterStore store_;
  std::unique_ptr<EncoderBackend> backend_;
  Pooler pooler_;
  nn::Linear hidden_;
  nn::Linear output_;
};

// Loads either model kind, dispatching on the checkpoint's model tag.
std::unique_ptr<RrModel> LoadRrModel(const std::filesystem::path &path,
                                     const LabelSet *expected = nullptr,
                                     const std::filesystem::path &weights_dir = {});

// Index of the largest entry of each row; ties go to the lowest index.
std::vector<int> ArgmaxRows(const nn::Matrix &scores);

// Gold labels of every sentence; ContractError when one is missing.
std::vector<int> GoldLabels(const Document &doc);

// Sentence token lists of a document under the reference tokenizer.
std::vector<std::vector<std::string>> SentenceTokens(const Document &doc);

// Encoder options from "encoder.*" keys.
BackendOptions BackendOptionsFromConfig(const Config &config);
void BackendOptionsToConfig(const BackendOptions &options, Config &config);

}  // namespace legalseq::hsln

#endif  // LEGALSEQ_HSLN_HSLN_H_
