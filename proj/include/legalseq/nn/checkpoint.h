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

#ifndef LEGALSEQ_NN_CHECKPOINT_H_
#define LEGALSEQ_NN_CHECKPOINT_H_

#include <filesystem>
#include <string>

#include "legalseq/base/config.h"
#include "legalseq/base/tensor_archive.h"
#include "legalseq/corpus/labels.h"
#include "legalseq/nn/parameter.h"

namespace legalseq::nn {

inline constexpr char kCheckpointFormat[] = "legalseq-checkpoint/1";

struct CheckpointMeta {
  std::string model_kind;  // "hsln", "independent", "ner-span", ...
  Config config;           // model configuration that rebuilds the network
  LabelSet labels;
  std::string backend_id;
};

// Writes every parameter except frozen encoder weights, which are reloaded
// from the backend's weight directory.
void SaveCheckpoint(const std::filesystem::path &path, const CheckpointMeta &meta,
                    const ParameterStore &store);

struct LoadedCheckpoint {
  CheckpointMeta meta;
  TensorArchive archive;
};

// ConfigError on a missing or foreign format tag.
LoadedCheckpoint ReadCheckpoint(const std::filesystem::path &path);

// Copies stored values into `store`. Every parameter that SaveCheckpoint
// would have written must be present with the same shape.
void RestoreParameters(const TensorArchive &archive, ParameterStore &store);

// ConfigError naming the first difference.
void RequireSameLabels(const LabelSet &expected, const LabelSet &stored);

}  // namespace legalseq::nn

#endif  // LEGALSEQ_NN_CHECKPOINT_H_
