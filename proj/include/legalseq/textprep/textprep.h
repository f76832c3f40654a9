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

#ifndef LEGALSEQ_TEXTPREP_TEXTPREP_H_
#define LEGALSEQ_TEXTPREP_TEXTPREP_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "legalseq/corpus/document.h"

namespace legalseq {

// Regularization steps, always applied in this order.
enum class RegularizeStep {
  kLowercase,     // (a)
  kStripHandles,  // (b) delete "@" followed by word characters
  kPunctFilter,   // (c) drop punctuation, keep '?' as an isolated token
  kSpecialChars,  // (d) drop anything but letters, digits, whitespace, '?'
  kStopwords,     // (e) drop stop words, keeping the exceptions
  kTrailingWs,    // (f) trim surrounding whitespace
};

const char *RegularizeStepName(RegularizeStep step);
RegularizeStep ParseRegularizeStep(const std::string &name);

// The shipped English stop-word list (version 1, 179 entries).
const std::set<std::string> &DefaultStopwords();

struct RegularizeConfig {
  std::set<RegularizeStep> enabled_steps = {
      RegularizeStep::kLowercase,    RegularizeStep::kStripHandles,
      RegularizeStep::kPunctFilter,  RegularizeStep::kSpecialChars,
      RegularizeStep::kStopwords,    RegularizeStep::kTrailingWs};
  std::set<std::string> stopword_list = DefaultStopwords();
  std::set<std::string> stopword_exceptions = {"not", "can"};

  // Throws ConfigError when an exception is not a stop word.
  void Validate() const;
};

std::string Regularize(const std::string &text, const RegularizeConfig &config);

// Regularizes every sentence of `doc` in place of its surface. Text between
// sentences is kept; offsets are recomputed.
Document RegularizeDocument(const Document &doc, const RegularizeConfig &config);

// Returns the input documents followed by one augmented copy of each. A copy
// has one uniformly chosen adjacent sentence pair swapped, labels moving with
// their sentences; its text is rebuilt so offsets stay consistent.
// Single-sentence documents are copied unchanged. Deterministic in `seed`.
std::vector<Document> AugmentSwap(const std::vector<Document> &docs,
                                  uint64_t seed);

// Swaps sentences i and i + 1 of `doc`, rebuilding text and offsets.
Document SwapAdjacentSentences(const Document &doc, size_t i);

}  // namespace legalseq

#endif  // LEGALSEQ_TEXTPREP_TEXTPREP_H_
