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

#include "legalseq/nn/checkpoint.h"

#include <sstream>

#include "legalseq/base/errors.h"

namespace legalseq::nn {
namespace {

bool Stored(const Parameter &p) { return !(p.frozen() && p.group() == "encoder"); }

std::string JoinLines(const std::vector<std::string> &names) {
  std::string out;
  for (const auto &n : names) out += n + "\n";
  return out;
}

const std::string &MetaField(const TensorArchive &a, const std::string &key,
                             const std::filesystem::path &path) {
  auto it = a.metadata().find(key);
  if (it == a.metadata().end()) {
    throw ConfigError("checkpoint " + path.string() + " has no '" + key + "' entry");
  }
  return it->second;
}

}  // namespace

void SaveCheckpoint(const std::filesystem::path &path, const CheckpointMeta &meta,
                    const ParameterStore &store) {
  TensorArchive a;
  a.metadata()["format"] = kCheckpointFormat;
  a.metadata()["model"] = meta.model_kind;
  a.metadata()["config"] = meta.config.ToString();
  a.metadata()["labels"] = JoinLines(meta.labels.names());
  a.metadata()["label_kind"] = LabelKindName(meta.labels.kind());
  a.metadata()["backend"] = meta.backend_id;
  for (const Parameter *p : store.All()) {
    if (Stored(*p)) a.Put(p->name(), p->value());
  }
  a.Write(path);
}

LoadedCheckpoint ReadCheckpoint(const std::filesystem::path &path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError("checkpoint not found: " + path.string());
  }
  LoadedCheckpoint out{{}, TensorArchive::Read(path)};
  const TensorArchive &a = out.archive;
  auto fmt = a.metadata().find("format");
  if (fmt == a.metadata().end() || fmt->second != kCheckpointFormat) {
    throw ConfigError(path.string() + " is not a " + std::string(kCheckpointFormat) +
                      " checkpoint");
  }
  out.meta.model_kind = MetaField(a, "model", path);
  out.meta.config = Config::Parse(MetaField(a, "config", path), path.string());
  const std::string &kind = MetaField(a, "label_kind", path);
  const LabelKind lk = kind == LabelKindName(LabelKind::kEntity) ? LabelKind::kEntity
                                                                 : LabelKind::kRhetoricalRole;
  std::vector<std::string> names;
  std::istringstream lines(MetaField(a, "labels", path));
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty()) names.push_back(line);
  }
  out.meta.labels = LabelSet(names, lk);
  out.meta.backend_id = MetaField(a, "backend", path);
  return out;
}

void RestoreParameters(const TensorArchive &archive, ParameterStore &store) {
  for (Parameter *p : store.All()) {
    if (!Stored(*p)) continue;
    if (!archive.Has(p->name())) {
      throw ConfigError("checkpoint lacks parameter '" + p->name() + "'");
    }
    const Matrix &v = archive.Get(p->name());
    if (v.rows() != p->value().rows() || v.cols() != p->value().cols()) {
      throw ConfigError("checkpoint parameter '" + p->name() + "' has shape " +
                        std::to_string(v.rows()) + "x" + std::to_string(v.cols()) +
                        ", model expects " + std::to_string(p->value().rows()) + "x" +
                        std::to_string(p->value().cols()));
    }
    p->value() = v;
  }
}

void RequireSameLabels(const LabelSet &expected, const LabelSet &stored) {
  if (expected == stored) return;
  if (expected.kind() != stored.kind()) {
    throw ConfigError(std::string("label set kind mismatch: expected ") +
                      LabelKindName(expected.kind()) + ", checkpoint has " +
                      LabelKindName(stored.kind()));
  }
  if (expected.size() != stored.size()) {
    throw ConfigError("label set mismatch: expected " + std::to_string(expected.size()) +
                      " labels, checkpoint has " + std::to_string(stored.size()));
  }
  for (int i = 0; i < expected.size(); ++i) {
    if (expected.name(i) != stored.name(i)) {
      throw ConfigError("label set mismatch at index " + std::to_string(i) + ": expected '" +
                        expected.name(i) + "', checkpoint has '" + stored.name(i) + "'");
    }
  }
}

}  // namespace legalseq::nn
