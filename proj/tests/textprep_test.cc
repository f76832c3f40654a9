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

#include <doctest.h>

#include <algorithm>
#include <regex>
#include <sstream>

#include "legalseq/base/errors.h"
#include "legalseq/textprep/textprep.h"
#include "test_util.h"

namespace legalseq {
namespace {

// ASCII reference for the six rules, one std::regex pass per rule.
std::string OracleRegularize(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  s = std::regex_replace(s, std::regex("@[A-Za-z0-9_]+"), "");
  s = std::regex_replace(s, std::regex("\\?"), " ? ");
  s = std::regex_replace(s, std::regex("[!\"#$%&'()*+,\\-./:;<=>@\\[\\\\\\]^_`{|}~]"), " ");
  s = std::regex_replace(s, std::regex("[^a-z0-9 \\t\\n?]"), " ");
  std::istringstream in(s);
  std::string word, out;
  const auto &stop = DefaultStopwords();
  while (in >> word) {
    if (stop.count(word) && word != "not" && word != "can") continue;
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

TEST_CASE("regularize worked examples") {
  const RegularizeConfig cfg;
  CHECK(Regularize("Hello World ", cfg) == "hello world");
  CHECK(Regularize("The court did NOT agree?", cfg) == "court not agree ?");
  CHECK(Regularize("@judge Order; issued.", cfg) == "order issued");
  CHECK(Regularize("", cfg) == "");
  CHECK(Regularize("   ", cfg) == "");
}

TEST_CASE("regularize agrees with the rule-by-rule oracle on the examples") {
  for (const char *s : {"Hello World ", "The court did NOT agree?", "@judge Order; issued.",
                        "Is it so?? We can (and will) appeal -- @counsel_2 said."}) {
    CHECK(Regularize(s, RegularizeConfig{}) == OracleRegularize(s));
  }
}

TEST_CASE("regularize agrees with the oracle on random ASCII text") {
  Rng rng(11);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ?!.,;:@_-'()\t";
  const std::vector<std::string> words = {"the", "not", "can", "Court", "IS", "a", "Did", "@x1"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int n = static_cast<int>(rng.UniformInt(40));
    for (int i = 0; i < n; ++i) {
      if (rng.Bernoulli(0.2)) {
        s += words[rng.UniformInt(words.size())] + " ";
      } else {
        s += alphabet[rng.UniformInt(alphabet.size())];
      }
    }
    CAPTURE(s);
    CHECK(Regularize(s, RegularizeConfig{}) == OracleRegularize(s));
  }
}

TEST_CASE("regularize is idempotent and never leaves surrounding whitespace") {
  Rng rng(12);
  const RegularizeConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = "  " + testing::RandomText(rng, static_cast<int>(rng.UniformInt(12))) +
                    " ? \xC3\x89t\xC3\xA9 @who ";
    const std::string once = Regularize(s, cfg);
    CHECK(Regularize(once, cfg) == once);
    if (!once.empty()) {
      CHECK(once.front() != ' ');
      CHECK(once.back() != ' ');
    }
  }
}

TEST_CASE("question marks survive as isolated tokens") {
  CHECK(Regularize("why?not", RegularizeConfig{}) == "? not");
  CHECK(Regularize("really??", RegularizeConfig{}) == "really ? ?");
}

TEST_CASE("steps can be disabled individually") {
  RegularizeConfig cfg;
  cfg.enabled_steps = {RegularizeStep::kLowercase, RegularizeStep::kTrailingWs};
  CHECK(Regularize("The Court. ", cfg) == "the court.");
  cfg.enabled_steps = {RegularizeStep::kStopwords};
  CHECK(Regularize("the court is not here", cfg) == "court not");
  CHECK(ParseRegularizeStep("punct_filter") == RegularizeStep::kPunctFilter);
  CHECK_THROWS_AS(ParseRegularizeStep("stemming"), ConfigError);
}

TEST_CASE("the shipped stop-word list") {
  CHECK(DefaultStopwords().size() == 179);
  CHECK(DefaultStopwords().count("not"));
  CHECK(DefaultStopwords().count("can"));
  RegularizeConfig cfg;
  cfg.stopword_exceptions = {"court"};
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  RegularizeConfig{}.Validate();
}

Document MakeDoc(const std::string &id, const std::vector<std::string> &sentences) {
  Document doc;
  doc.doc_id = id;
  int offset = 0;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) {
      doc.text += "\n\n";
      offset += 2;
    }
    const int len = static_cast<int>(sentences[i].size());
    doc.sentences.push_back({offset, offset + len, sentences[i], static_cast<int>(i % 13)});
    doc.text += sentences[i];
    offset += len;
  }
  return doc;
}

void CheckOffsets(const Document &doc) {
  for (const auto &s : doc.sentences) {
    CHECK(doc.text.substr(static_cast<size_t>(s.start_char),
                          static_cast<size_t>(s.end_char - s.start_char)) == s.surface);
  }
}

TEST_CASE("regularize_document rewrites sentences and keeps the gaps") {
  const Document doc = MakeDoc("7", {"The court did NOT agree?", "@judge Order; issued."});
  const Document out = RegularizeDocument(doc, RegularizeConfig{});
  CHECK(out.text == "court not agree ?\n\norder issued");
  REQUIRE(out.sentences.size() == 2);
  CHECK(out.sentences[0].surface == "court not agree ?");
  CHECK(out.sentences[1].start_char == 19);
  CHECK(out.sentences[1].surface == "order issued");
  CHECK(out.sentences[1].rr_label == doc.sentences[1].rr_label);
  CHECK(out.doc_id == "7");
}

TEST_CASE("augment_swap on a two-sentence document") {
  const Document doc = MakeDoc("d", {"A.", "Bee."});
  for (uint64_t seed : {0, 1, 2}) {
    const auto out = AugmentSwap({doc}, seed);
    REQUIRE(out.size() == 2);
    CHECK(out[0].text == doc.text);
    CHECK(out[1].sentences[0].surface == "Bee.");
    CHECK(out[1].sentences[1].surface == "A.");
    CHECK(out[1].sentences[0].rr_label == 1);
    CHECK(out[1].text == "Bee.\n\nA.");
    CheckOffsets(out[1]);
  }
}

TEST_CASE("augment_swap doubles the corpus and preserves sentence-label pairs") {
  Rng rng(3);
  std::vector<Document> docs;
  for (int d = 0; d < 247; ++d) {
    std::vector<std::string> sentences;
    const int n = 1 + static_cast<int>(rng.UniformInt(6));
    for (int s = 0; s < n; ++s) sentences.push_back(testing::RandomText(rng, 3));
    docs.push_back(MakeDoc(std::to_string(d), sentences));
  }
  const auto out = AugmentSwap(docs, 42);
  REQUIRE(out.size() == 494);
  for (size_t d = 0; d < docs.size(); ++d) {
    CHECK(out[d].text == docs[d].text);
    const Document &copy = out[docs.size() + d];
    CheckOffsets(copy);
    auto pairs = [](const Document &doc) {
      std::vector<std::pair<std::string, int>> p;
      for (const auto &s : doc.sentences) p.emplace_back(s.surface, *s.rr_label);
      std::sort(p.begin(), p.end());
      return p;
    };
    CHECK(pairs(copy) == pairs(docs[d]));
    int moved = 0;
    for (size_t s = 0; s < copy.sentences.size(); ++s) {
      moved += copy.sentences[s].surface != docs[d].sentences[s].surface;
    }
    CHECK((moved == 0 || moved == 2));
  }
}

TEST_CASE("augment_swap is deterministic in the seed") {
  std::vector<Document> docs;
  for (int d = 0; d < 10; ++d) {
    docs.push_back(MakeDoc(std::to_string(d), {"s0.", "s1.", "s2.", "s3.", "s4.", "s5.", "s6.", "s7."}));
  }
  auto positions = [&](uint64_t seed) {
    std::vector<int> p;
    const auto out = AugmentSwap(docs, seed);
    for (size_t d = 0; d < docs.size(); ++d) {
      const Document &copy = out[docs.size() + d];
      for (size_t s = 0; s < copy.sentences.size(); ++s) {
        if (copy.sentences[s].surface != docs[d].sentences[s].surface) {
          p.push_back(static_cast<int>(s));
          break;
        }
      }
    }
    return p;
  };
  int distinct = 0;
  const auto base = positions(0);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = positions(seed);
    CHECK(p == positions(seed));
    distinct += p != base;
  }
  CHECK(distinct >= 18);
}

}  // namespace
}  // namespace legalseq
