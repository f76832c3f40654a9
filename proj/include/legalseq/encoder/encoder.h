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

#ifndef LEGALSEQ_ENCODER_ENCODER_H_
#define LEGALSEQ_ENCODER_ENCODER_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "legalseq/nn/graph.h"
#include "legalseq/nn/parameter.h"

namespace legalseq {

inline constexpr char kStartMarker[] = "[CLS]";
inline constexpr char kEndMarker[] = "[SEP]";

struct TokenSequence {
  std::vector<std::string> tokens;
  bool wrapped = false;

  size_t size() const { return tokens.size(); }
};

// Wraps `tokens` in start/end markers, dropping tail tokens so that at most
// max_len positions remain. The markers always survive. max_len < 2 is a
// ContractError.
TokenSequence WrapTokens(const std::vector<std::string> &tokens, int max_len);

struct EncoderOutput {
  nn::Matrix vectors;  // one row per retained position
  std::string backend_id;
};

// Maps a token sequence to one D-dimensional vector per position.
class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;

  virtual const std::string &id() const = 0;
  virtual int dim() const = 0;

  // Number of leading positions of `seq` the backend can encode, counting
  // the end marker, which is kept.
  virtual size_t Fit(const TokenSequence &seq) const { return seq.size(); }

  // Rows for every position of `seq`; seq.size() must not exceed Fit(seq).
  virtual nn::Var Encode(nn::Graph &g, const TokenSequence &seq) const = 0;

  // True when Encode depends on trainable parameters.
  virtual bool trainable() const { return false; }
};

// Test backend: every surface maps to a fixed pseudo-random vector in
// [-1, 1)^D derived from a 64-bit hash of its bytes. No context, no
// parameters, identical across processes.
class HashBackend : public EncoderBackend {
 public:
  explicit HashBackend(int dim = 64, uint64_t seed = 0);

  const std::string &id() const override { return id_; }
  int dim() const override { return dim_; }
  nn::Var Encode(nn::Graph &g, const TokenSequence &seq) const override;

  nn::RowVector Vector(const std::string &surface) const;

 private:
  std::string id_ = "hash";
  int dim_;
  uint64_t seed_;
};

struct BackendOptions {
  std::string id = "hash";
  // Weights of pretrained backends. Empty: $LEGALSEQ_WEIGHTS_DIR/<id>.
  std::filesystem::path weights_dir;
  bool trainable = false;
  int hash_dim = 64;
  uint64_t hash_seed = 0;
};

// Registered ids: "hash" and the pretrained ids listed by
// PretrainedBackendIds(). Pretrained backends put their weights into
// `store` under the "encoder" group. Unknown ids raise ConfigError.
std::unique_ptr<EncoderBackend> CreateBackend(const BackendOptions &options,
                                              nn::ParameterStore &store);
std::vector<std::string> BackendIds();
std::filesystem::path ResolveWeightsDir(const BackendOptions &options);

// Wraps, truncates to max_len (and to what the backend fits) and encodes in
// inference mode.
EncoderOutput EncodeTokens(const std::vector<std::string> &tokens,
                           const EncoderBackend &backend, int max_len);

}  // namespace legalseq

#endif  // LEGALSEQ_ENCODER_ENCODER_H_
