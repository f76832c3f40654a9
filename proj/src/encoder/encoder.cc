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

#include "legalseq/encoder/encoder.h"

#include <cstdlib>

#include "legalseq/base/errors.h"
#include "legalseq/base/rng.h"
#include "legalseq/encoder/pretrained.h"

namespace legalseq {

TokenSequence WrapTokens(const std::vector<std::string> &tokens, int max_len) {
  if (max_len < 2) {
    throw ContractError("max_len " + std::to_string(max_len) +
                        " leaves no room for the start and end markers");
  }
  TokenSequence seq;
  seq.wrapped = true;
  const size_t body = std::min(tokens.size(), static_cast<size_t>(max_len - 2));
  seq.tokens.reserve(body + 2);
  seq.tokens.emplace_back(kStartMarker);
  seq.tokens.insert(seq.tokens.end(), tokens.begin(), tokens.begin() + static_cast<long>(body));
  seq.tokens.emplace_back(kEndMarker);
  return seq;
}

HashBackend::HashBackend(int dim, uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim < 1) throw ConfigError("hash backend dimension must be positive");
}

nn::RowVector HashBackend::Vector(const std::string &surface) const {
  const uint64_t h = Fnv1a64(surface.data(), surface.size(), seed_);
  nn::RowVector v(dim_);
  for (int d = 0; d < dim_; ++d) {
    const uint64_t x = SplitMix64(h + 0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(d + 1));
    v(d) = static_cast<double>(x >> 11) * 0x1.0p-52 - 1.0;
  }
  return v;
}

nn::Var HashBackend::Encode(nn::Graph &g, const TokenSequence &seq) const {
  nn::Matrix out(static_cast<Eigen::Index>(seq.size()), dim_);
  for (size_t i = 0; i < seq.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = Vector(seq.tokens[i]);
  }
  return g.Constant(std::move(out));
}

std::vector<std::string> BackendIds() {
  std::vector<std::string> ids = {"hash"};
  for (const auto &id : PretrainedBackendIds()) ids.push_back(id);
  return ids;
}

std::filesystem::path ResolveWeightsDir(const BackendOptions &options) {
  if (!options.weights_dir.empty()) return options.weights_dir;
  if (const char *env = std::getenv("LEGALSEQ_WEIGHTS_DIR"); env && *env) {
    return std::filesystem::path(env) / options.id;
  }
  return {};
}

std::unique_ptr<EncoderBackend> CreateBackend(const BackendOptions &options,
                                              nn::ParameterStore &store) {
  if (options.id == "hash") {
    return std::make_unique<HashBackend>(options.hash_dim, options.hash_seed);
  }
  const auto pretrained = PretrainedBackendIds();
  if (std::find(pretrained.begin(), pretrained.end(), options.id) == pretrained.end()) {
    std::string known;
    for (const auto &id : BackendIds()) known += (known.empty() ? "" : ", ") + id;
    throw ConfigError("unknown encoder backend '" + options.id + "' (known: " + known + ")");
  }
  const std::filesystem::path dir = ResolveWeightsDir(options);
  if (dir.empty() || !std::filesystem::is_directory(dir)) {
    throw ConfigError("backend '" + options.id +
                      "' needs pretrained weights: set encoder.weights or "
                      "LEGALSEQ_WEIGHTS_DIR (looked in '" + dir.string() + "')");
  }
  return std::make_unique<TransformerBackend>(options.id, dir, store, options.trainable);
}

EncoderOutput EncodeTokens(const std::vector<std::string> &tokens,
                           const EncoderBackend &backend, int max_len) {
  TokenSequence seq = WrapTokens(tokens, max_len);
  const size_t fit = backend.Fit(seq);
  if (fit < seq.size()) seq = WrapTokens(tokens, static_cast<int>(fit));
  nn::Graph g(false, false);
  return {backend.Encode(g, seq).value(), backend.id()};
}

}  // namespace legalseq
