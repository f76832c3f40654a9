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

#ifndef LEGALSEQ_CORPUS_LABELS_H_
#define LEGALSEQ_CORPUS_LABELS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace legalseq {

enum class LabelKind { kRhetoricalRole, kEntity };

const char *LabelKindName(LabelKind kind);

// Ordered set of unique label names with a bijective index mapping.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::vector<std::string> names, LabelKind kind);

  // The 13 rhetorical roles and 14 legal entity types of the shared task.
  static LabelSet DefaultRhetoricalRoles();
  static LabelSet DefaultEntities();
  static LabelSet Default(LabelKind kind);

  // One label per line; blank lines and '#' comments ignored.
  static LabelSet Load(const std::filesystem::path &path, LabelKind kind);

  int size() const { return static_cast<int>(names_.size()); }
  LabelKind kind() const { return kind_; }
  const std::string &name(int index) const;
  const std::vector<std::string> &names() const { return names_; }
  std::optional<int> Find(const std::string &name) const;
  bool Contains(int index) const { return index >= 0 && index < size(); }

  bool operator==(const LabelSet &other) const {
    return kind_ == other.kind_ && names_ == other.names_;
  }
  bool operator!=(const LabelSet &other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  LabelKind kind_ = LabelKind::kRhetoricalRole;
};

}  // namespace legalseq

#endif  // LEGALSEQ_CORPUS_LABELS_H_
