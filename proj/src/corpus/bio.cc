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

#include "legalseq/corpus/bio.h"

#include <algorithm>

#include "legalseq/base/errors.h"
#include "legalseq/base/utf8.h"

namespace legalseq {

std::string bio::TagName(int tag, const LabelSet &labels) {
  if (tag == kOutside) return "O";
  return (IsBegin(tag) ? "B-" : "I-") + labels.name(LabelOf(tag));
}

namespace {

std::string SpanString(const EntitySpan &s, const LabelSet &labels) {
  return "[" + std::to_string(s.start_char) + ", " + std::to_string(s.end_char) +
         ", " + labels.name(s.label) + "]";
}

}  // namespace

TagSequence ToBio(const std::vector<Token> &tokens,
                  const std::vector<EntitySpan> &spans, const LabelSet &labels,
                  AlignmentPolicy policy, BioStats *stats) {
  TagSequence out;
  out.tokens = tokens;
  out.tags.assign(tokens.size(), bio::kOutside);
  BioStats local;

  std::vector<EntitySpan> sorted = spans;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EntitySpan &a, const EntitySpan &b) {
                     return a.start_char < b.start_char;
                   });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].start_char < sorted[i - 1].end_char) {
      throw OverlapError("ToBio: spans " + SpanString(sorted[i - 1], labels) +
                         " and " + SpanString(sorted[i], labels) + " overlap");
    }
  }

  for (const EntitySpan &span : sorted) {
    if (!labels.Contains(span.label)) {
      throw ContractError("ToBio: span label out of range");
    }
    // Tokens intersecting the span.
    size_t first = tokens.size(), last = 0;
    for (size_t t = 0; t < tokens.size(); ++t) {
      if (tokens[t].end_char > span.start_char &&
          tokens[t].start_char < span.end_char) {
        first = std::min(first, t);
        last = t;
      }
    }
    const bool covered = first < tokens.size();
    const bool aligned = covered && tokens[first].start_char == span.start_char &&
                         tokens[last].end_char == span.end_char;
    if (!aligned && policy == AlignmentPolicy::kStrict) {
      std::string nearest;
      if (covered) {
        nearest = "nearest token boundaries [" +
                  std::to_string(tokens[first].start_char) + ", " +
                  std::to_string(tokens[last].end_char) + ")";
      } else {
        nearest = "no token inside the span";
      }
      throw AlignmentError("span " + SpanString(span, labels) +
                           " is not aligned to token boundaries; " + nearest);
    }
    if (!covered) {
      ++local.dropped;
      continue;
    }
    bool collides = false;
    for (size_t t = first; t <= last; ++t) {
      if (out.tags[t] != bio::kOutside) collides = true;
    }
    if (collides) {
      ++local.dropped;
      continue;
    }
    if (!aligned) ++local.expanded;
    out.tags[first] = bio::Begin(span.label);
    for (size_t t = first + 1; t <= last; ++t) out.tags[t] = bio::Inside(span.label);
  }
  if (stats != nullptr) *stats = local;
  return out;
}

std::vector<EntitySpan> FromBio(const TagSequence &tags, const LabelSet &labels,
                                BioRepair repair) {
  if (tags.tags.size() != tags.tokens.size()) {
    throw ContractError("FromBio: tag count differs from token count");
  }
  const int num_tags = bio::NumTags(labels);
  std::vector<EntitySpan> spans;
  int open_label = -1;
  for (size_t t = 0; t < tags.tags.size(); ++t) {
    const int tag = tags.tags[t];
    if (tag < 0 || tag >= num_tags) {
      throw ContractError("FromBio: tag index " + std::to_string(tag) +
                          " out of range");
    }
    if (tag == bio::kOutside) {
      open_label = -1;
      continue;
    }
    const int label = bio::LabelOf(tag);
    const bool continues = bio::IsInside(tag) && open_label == label;
    if (bio::IsInside(tag) && !continues && repair == BioRepair::kStrict) {
      throw ContractError("FromBio: invalid transition to " +
                          bio::TagName(tag, labels) + " at token " +
                          std::to_string(t));
    }
    if (continues) {
      spans.back().end_char = tags.tokens[t].end_char;
    } else {
      EntitySpan s;
      s.start_char = tags.tokens[t].start_char;
      s.end_char = tags.tokens[t].end_char;
      s.label = label;
      spans.push_back(s);
      open_label = label;
    }
  }
  return spans;
}

std::vector<int> RepairBio(const std::vector<int> &tags) {
  std::vector<int> out = tags;
  int open_label = -1;
  for (int &tag : out) {
    if (tag == bio::kOutside) {
      open_label = -1;
      continue;
    }
    const int label = bio::LabelOf(tag);
    if (bio::IsInside(tag) && open_label != label) tag = bio::Begin(label);
    open_label = label;
  }
  return out;
}

bool IsValidBio(const std::vector<int> &tags) { return RepairBio(tags) == tags; }

void FillSurfaces(std::vector<EntitySpan> &spans, const std::string &text) {
  const utf8::CodepointIndex index(text);
  for (EntitySpan &s : spans) {
    if (s.start_char < 0 || s.end_char > static_cast<int>(index.size()) ||
        s.start_char >= s.end_char) {
      throw ContractError("FillSurfaces: span out of text bounds");
    }
    s.surface = index.Slice(text, static_cast<size_t>(s.start_char),
                            static_cast<size_t>(s.end_char));
  }
}

}  // namespace legalseq
