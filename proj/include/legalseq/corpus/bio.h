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

#ifndef LEGALSEQ_CORPUS_BIO_H_
#define LEGALSEQ_CORPUS_BIO_H_

#include <string>
#include <vector>

#include "legalseq/corpus/document.h"
#include "legalseq/corpus/labels.h"

namespace legalseq {

// BIO tag indices over a label set of n entity types: 0 is O, 1 + 2k is
// B-<k>, 2 + 2k is I-<k>. There are 2n + 1 tags.
namespace bio {
constexpr int kOutside = 0;
inline int Begin(int label) { return 1 + 2 * label; }
inline int Inside(int label) { return 2 + 2 * label; }
inline bool IsBegin(int tag) { return tag > 0 && tag % 2 == 1; }
inline bool IsInside(int tag) { return tag > 0 && tag % 2 == 0; }
inline int LabelOf(int tag) { return (tag - 1) / 2; }
inline int NumTags(const LabelSet &labels) { return 2 * labels.size() + 1; }
std::string TagName(int tag, const LabelSet &labels);
}  // namespace bio

struct TagSequence {
  std::vector<Token> tokens;
  std::vector<int> tags;
};

enum class AlignmentPolicy {
  // Snap misaligned spans outward to the covering token boundaries.
  kExpand,
  // Reject spans whose boundaries do not fall on token boundaries.
  kStrict,
};

enum class BioRepair {
  // A stray I-X (after O or after another type) opens a new X span.
  kInsideAsBegin,
  // Invalid transitions raise ContractError.
  kStrict,
};

struct BioStats {
  int expanded = 0;  // spans snapped outward
  int dropped = 0;   // spans covering no token, or colliding after expansion
};

// Encodes spans as BIO tags over `tokens`. Spans must be non-overlapping.
TagSequence ToBio(const std::vector<Token> &tokens,
                  const std::vector<EntitySpan> &spans, const LabelSet &labels,
                  AlignmentPolicy policy = AlignmentPolicy::kExpand,
                  BioStats *stats = nullptr);

// Decodes maximal B/I runs into spans with offsets from the first and last
// token of each run. Surfaces are left empty (see FillSurfaces).
std::vector<EntitySpan> FromBio(const TagSequence &tags, const LabelSet &labels,
                                BioRepair repair = BioRepair::kInsideAsBegin);

// Rewrites tags into a valid BIO sequence under the I-as-B rule.
std::vector<int> RepairBio(const std::vector<int> &tags);

bool IsValidBio(const std::vector<int> &tags);

// Sets each span's surface to its slice of `text`.
void FillSurfaces(std::vector<EntitySpan> &spans, const std::string &text);

}  // namespace legalseq

#endif  // LEGALSEQ_CORPUS_BIO_H_
