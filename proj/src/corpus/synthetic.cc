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

#include "legalseq/corpus/synthetic.h"

#include <cctype>
#include <string>

#include "legalseq/base/errors.h"
#include "legalseq/base/rng.h"
#include "legalseq/base/utf8.h"

namespace legalseq {
namespace {

const std::vector<std::string> kFiller = {
    "the", "of", "and", "in", "that", "said", "was", "on", "by", "this",
    "to", "a", "with", "which", "as", "is", "for", "under", "its", "such"};

// Cue words per class; classes beyond the table get generated cues.
const std::vector<std::vector<std::string>> kCues = {
    {"appellant", "versus", "petition", "bench", "coram"},
    {"incident", "complaint", "lodged", "night", "witnessed"},
    {"contended", "argued", "submitted", "learned", "counsel"},
    {"accordingly", "dismissed", "allowed", "disposed", "costs"},
    {"section", "act", "provision", "enacted", "statute"},
    {"precedent", "relied", "followed", "reported", "observed"},
};

std::vector<std::string> CuesFor(int cls) {
  if (cls < static_cast<int>(kCues.size())) return kCues[static_cast<size_t>(cls)];
  std::vector<std::string> out;
  for (int k = 0; k < 5; ++k) out.push_back("cue" + std::to_string(cls) + "x" + std::to_string(k));
  return out;
}

template <typename T>
const T &Pick(const std::vector<T> &pool, Rng &rng) {
  return pool[rng.UniformInt(pool.size())];
}

int CpLength(const std::string &s) { return static_cast<int>(utf8::Length(s)); }

// Entity surfaces by type slot; slots cycle for more than three types.
const std::vector<std::vector<std::string>> kEntityPools = {
    {"Supreme Court", "High Court of Delhi", "Sessions Court", "Madras High Court",
     "District Court"},
    {"Ramesh Kumar", "Sunita Devi", "Arjun Singh", "Meena Iyer", "Farhan Ali"},
    {"State of Kerala", "Union of India", "State of Punjab", "Municipal Corporation",
     "State of Bihar"},
};

// {k} is replaced by an entity of type slot k.
const std::vector<std::string> kTemplates = {
    "The {0} heard the appeal filed by {1} against {2} .",
    "{1} approached the {0} seeking relief from {2} .",
    "Counsel for {2} argued before the {0} that {1} was at fault .",
    "The {0} dismissed the petition of {1} .",
    "Notice was issued to {2} by the {0} .",
    "{1} was represented by counsel and {2} opposed the plea .",
};

}  // namespace

std::vector<Document> SyntheticRrDocuments(const SyntheticRrOptions &options,
                                           const LabelSet &labels) {
  if (options.classes < 1 || options.classes > labels.size()) {
    throw ConfigError("synthetic corpus wants " + std::to_string(options.classes) +
                      " classes but the label set has " + std::to_string(labels.size()));
  }
  if (options.min_words < 2 || options.max_words < options.min_words) {
    throw ConfigError("synthetic sentence length range is empty");
  }
  Rng rng(options.seed);
  std::vector<Document> docs;
  for (int d = 0; d < options.documents; ++d) {
    Document doc;
    doc.doc_id = std::to_string(d + 1);
    doc.numeric_id = true;
    for (int s = 0; s < options.sentences; ++s) {
      const int cls = static_cast<int>(rng.UniformInt(static_cast<uint64_t>(options.classes)));
      const auto cues = CuesFor(cls);
      const int n = options.min_words +
                    static_cast<int>(rng.UniformInt(
                        static_cast<uint64_t>(options.max_words - options.min_words + 1)));
      std::string sentence;
      for (int w = 0; w < n; ++w) {
        const bool cue = w == 0 || rng.Bernoulli(0.4);
        std::string word = cue ? Pick(cues, rng) : Pick(kFiller, rng);
        if (w == 0) word[0] = static_cast<char>(std::toupper(word[0]));
        sentence += (w ? " " : "") + word;
      }
      sentence += " .";
      if (!doc.text.empty()) doc.text += ' ';
      SentenceSpan span;
      span.start_char = CpLength(doc.text);
      doc.text += sentence;
      span.end_char = CpLength(doc.text);
      span.surface = sentence;
      span.rr_label = cls;
      doc.sentences.push_back(std::move(span));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<NerDocument> SyntheticNerDocuments(const SyntheticNerOptions &options,
                                               const LabelSet &labels) {
  if (options.types < 1 || options.types > labels.size()) {
    throw ConfigError("synthetic corpus wants " + std::to_string(options.types) +
                      " entity types but the label set has " + std::to_string(labels.size()));
  }
  Rng rng(options.seed);
  std::vector<NerDocument> docs;
  for (int i = 0; i < options.sentences; ++i) {
    NerDocument doc;
    doc.doc_id = std::to_string(i + 1);
    doc.numeric_id = true;
    const std::string &tpl = Pick(kTemplates, rng);
    for (size_t p = 0; p < tpl.size();) {
      if (tpl[p] == '{') {
        const int slot = tpl[p + 1] - '0';
        p += 3;
        if (slot >= options.types) {
          doc.text += "the party";
          continue;
        }
        const std::string &surface = Pick(kEntityPools[static_cast<size_t>(slot) % kEntityPools.size()], rng);
        EntitySpan span;
        span.start_char = CpLength(doc.text);
        doc.text += surface;
        span.end_char = CpLength(doc.text);
        span.label = slot;
        span.surface = surface;
        doc.spans.push_back(std::move(span));
      } else {
        doc.text += tpl[p++];
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace legalseq
