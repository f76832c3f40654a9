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

#include "legalseq/textprep/textprep.h"

#include <algorithm>
#include <sstream>

#include "legalseq/base/errors.h"
#include "legalseq/base/rng.h"
#include "legalseq/base/utf8.h"

namespace legalseq {
namespace {

bool IsWordChar(char32_t c) {
  return utf8::IsLetter(c) || utf8::IsDigit(c) || c == U'_';
}

std::u32string StripHandles(const std::u32string &s) {
  std::u32string out;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == U'@' && i + 1 < s.size() && IsWordChar(s[i + 1])) {
      size_t j = i + 1;
      while (j < s.size() && IsWordChar(s[j])) ++j;
      i = j;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::u32string PunctFilter(const std::u32string &s) {
  std::u32string out;
  for (size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    if (c == U'?') {
      if (!out.empty() && !utf8::IsSpace(out.back())) out.push_back(U' ');
      out.push_back(U'?');
      if (i + 1 < s.size() && !utf8::IsSpace(s[i + 1])) out.push_back(U' ');
    } else if (utf8::IsPunct(c)) {
      out.push_back(U' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::u32string SpecialChars(const std::u32string &s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    const bool keep = utf8::IsLetter(c) || utf8::IsDigit(c) ||
                      utf8::IsSpace(c) || c == U'?';
    out.push_back(keep ? c : U' ');
  }
  return out;
}

std::u32string RemoveStopwords(const std::u32string &s,
                               const RegularizeConfig &config) {
  std::u32string out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && utf8::IsSpace(s[i])) ++i;
    size_t j = i;
    while (j < s.size() && !utf8::IsSpace(s[j])) ++j;
    if (j > i) {
      const std::u32string word = s.substr(i, j - i);
      const std::string w8 = utf8::Encode(word);
      const bool drop = config.stopword_list.count(w8) > 0 &&
                        config.stopword_exceptions.count(w8) == 0;
      if (!drop) {
        if (!out.empty()) out.push_back(U' ');
        out += word;
      }
    }
    i = j;
  }
  return out;
}

std::u32string Trim(const std::u32string &s) {
  size_t b = 0, e = s.size();
  while (b < e && utf8::IsSpace(s[b])) ++b;
  while (e > b && utf8::IsSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

const char *RegularizeStepName(RegularizeStep step) {
  switch (step) {
    case RegularizeStep::kLowercase: return "lowercase";
    case RegularizeStep::kStripHandles: return "strip_handles";
    case RegularizeStep::kPunctFilter: return "punct_filter";
    case RegularizeStep::kSpecialChars: return "special_chars";
    case RegularizeStep::kStopwords: return "stopwords";
    case RegularizeStep::kTrailingWs: return "trailing_ws";
  }
  return "";
}

RegularizeStep ParseRegularizeStep(const std::string &name) {
  for (auto step : {RegularizeStep::kLowercase, RegularizeStep::kStripHandles,
                    RegularizeStep::kPunctFilter, RegularizeStep::kSpecialChars,
                    RegularizeStep::kStopwords, RegularizeStep::kTrailingWs}) {
    if (name == RegularizeStepName(step)) return step;
  }
  throw ConfigError("unknown regularization step '" + name + "'");
}

const std::set<std::string> &DefaultStopwords() {
  static const std::set<std::string> words = [] {
    static const char *kWords =
        "i me my myself we our ours ourselves you you're you've you'll you'd "
        "your yours yourself yourselves he him his himself she she's her hers "
        "herself it it's its itself they them their theirs themselves what "
        "which who whom this that that'll these those am is are was were be "
        "been being have has had having do does did doing a an the and but if "
        "or because as until while of at by for with about against between "
        "into through during before after above below to from up down in out "
        "on off over under again further then once here there when where why "
        "how all any both each few more most other some such no nor not only "
        "own same so than too very s t can will just don don't should "
        "should've now d ll m o re ve y ain aren aren't couldn couldn't didn "
        "didn't doesn doesn't hadn hadn't hasn hasn't haven haven't isn isn't "
        "ma mightn mightn't mustn mustn't needn needn't shan shan't shouldn "
        "shouldn't wasn wasn't weren weren't won won't wouldn wouldn't";
    std::set<std::string> out;
    std::istringstream in(kWords);
    std::string w;
    while (in >> w) out.insert(w);
    return out;
  }();
  return words;
}

void RegularizeConfig::Validate() const {
  for (const auto &e : stopword_exceptions) {
    if (stopword_list.count(e) == 0) {
      throw ConfigError("stop-word exception '" + e +
                        "' is not in the stop-word list");
    }
  }
}

std::string Regularize(const std::string &text, const RegularizeConfig &config) {
  const auto on = [&](RegularizeStep s) { return config.enabled_steps.count(s) > 0; };
  std::u32string s = utf8::Decode(text);
  if (on(RegularizeStep::kLowercase)) {
    for (char32_t &c : s) c = utf8::ToLower(c);
  }
  if (on(RegularizeStep::kStripHandles)) s = StripHandles(s);
  if (on(RegularizeStep::kPunctFilter)) s = PunctFilter(s);
  if (on(RegularizeStep::kSpecialChars)) s = SpecialChars(s);
  if (on(RegularizeStep::kStopwords)) s = RemoveStopwords(s, config);
  if (on(RegularizeStep::kTrailingWs)) s = Trim(s);
  return utf8::Encode(s);
}

Document RegularizeDocument(const Document &doc, const RegularizeConfig &config) {
  const std::u32string text = utf8::Decode(doc.text);
  Document out = doc;
  std::u32string rebuilt;
  size_t pos = 0;
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    const SentenceSpan &s = doc.sentences[i];
    const auto b = static_cast<size_t>(s.start_char), e = static_cast<size_t>(s.end_char);
    rebuilt += text.substr(pos, b - pos);
    const std::string reg = Regularize(utf8::Encode(text.substr(b, e - b)), config);
    SentenceSpan &o = out.sentences[i];
    o.start_char = static_cast<int>(rebuilt.size());
    rebuilt += utf8::Decode(reg);
    o.end_char = static_cast<int>(rebuilt.size());
    o.surface = reg;
    pos = e;
  }
  rebuilt += text.substr(std::min(pos, text.size()));
  out.text = utf8::Encode(rebuilt);
  return out;
}

Document SwapAdjacentSentences(const Document &doc, size_t i) {
  if (i + 1 >= doc.sentences.size()) {
    throw ContractError("SwapAdjacentSentences: index out of range");
  }
  const std::u32string text = utf8::Decode(doc.text);
  const SentenceSpan &a = doc.sentences[i];
  const SentenceSpan &b = doc.sentences[i + 1];
  const std::u32string sa = text.substr(a.start_char, a.end_char - a.start_char);
  const std::u32string sb = text.substr(b.start_char, b.end_char - b.start_char);
  const std::u32string gap = text.substr(a.end_char, b.start_char - a.end_char);
  std::u32string rebuilt = text.substr(0, a.start_char) + sb + gap + sa +
                           text.substr(b.end_char);

  Document out = doc;
  out.doc_id = doc.doc_id + "#swap";
  out.numeric_id = false;
  out.text = utf8::Encode(rebuilt);
  SentenceSpan first = b;
  first.start_char = a.start_char;
  first.end_char = a.start_char + static_cast<int>(sb.size());
  SentenceSpan second = a;
  second.start_char = first.end_char + static_cast<int>(gap.size());
  second.end_char = second.start_char + static_cast<int>(sa.size());
  out.sentences[i] = first;
  out.sentences[i + 1] = second;
  return out;
}

std::vector<Document> AugmentSwap(const std::vector<Document> &docs,
                                  uint64_t seed) {
  Rng rng(seed);
  std::vector<Document> out = docs;
  out.reserve(docs.size() * 2);
  for (const Document &doc : docs) {
    if (doc.sentences.size() < 2) {
      Document copy = doc;
      copy.doc_id += "#swap";
      copy.numeric_id = false;
      out.push_back(std::move(copy));
      continue;
    }
    const size_t i = rng.UniformInt(doc.sentences.size() - 1);
    out.push_back(SwapAdjacentSentences(doc, i));
  }
  return out;
}

}  // namespace legalseq
