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

#include "legalseq/corpus/labels.h"

#include <fstream>

#include "legalseq/base/errors.h"

namespace legalseq {

const char *LabelKindName(LabelKind kind) {
  return kind == LabelKind::kRhetoricalRole ? "rhetorical_role" : "entity";
}

LabelSet::LabelSet(std::vector<std::string> names, LabelKind kind)
    : names_(std::move(names)), kind_(kind) {
  if (names_.empty()) throw ConfigError("label set must not be empty");
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ConfigError("empty label name");
    if (!index_.emplace(names_[i], static_cast<int>(i)).second) {
      throw ConfigError("duplicate label name '" + names_[i] + "'");
    }
  }
}

LabelSet LabelSet::DefaultRhetoricalRoles() {
  return LabelSet({"PREAMBLE", "FAC", "RLC", "ISSUE", "ARG_PETITIONER",
                   "ARG_RESPONDENT", "ANALYSIS", "STA", "PRE_RELIED",
                   "PRE_NOT_RELIED", "RATIO", "RPC", "NONE"},
                  LabelKind::kRhetoricalRole);
}

LabelSet LabelSet::DefaultEntities() {
  return LabelSet({"COURT", "PETITIONER", "RESPONDENT", "JUDGE", "LAWYER",
                   "DATE", "ORG", "GPE", "STATUTE", "PROVISION", "PRECEDENT",
                   "CASE_NUMBER", "WITNESS", "OTHER_PERSON"},
                  LabelKind::kEntity);
}

LabelSet LabelSet::Default(LabelKind kind) {
  return kind == LabelKind::kRhetoricalRole ? DefaultRhetoricalRoles()
                                            : DefaultEntities();
}

LabelSet LabelSet::Load(const std::filesystem::path &path, LabelKind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read label file " + path.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    names.push_back(line.substr(b, e - b + 1));
  }
  return LabelSet(std::move(names), kind);
}

const std::string &LabelSet::name(int index) const {
  if (!Contains(index)) {
    throw ContractError("label index " + std::to_string(index) +
                        " out of range for label set of size " +
                        std::to_string(size()));
  }
  return names_[static_cast<size_t>(index)];
}

std::optional<int> LabelSet::Find(const std::string &name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace legalseq
