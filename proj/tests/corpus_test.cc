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

#include <filesystem>
#include <set>

#include "legalseq/base/errors.h"
#include "legalseq/base/utf8.h"
#include "legalseq/corpus/bio.h"
#include "legalseq/corpus/corpus_io.h"
#include "legalseq/corpus/labels.h"
#include "legalseq/corpus/stats.h"
#include "legalseq/corpus/synthetic.h"
#include "test_util.h"

namespace legalseq {
namespace {

const LabelSet &Rr() {
  static const LabelSet labels = LabelSet::DefaultRhetoricalRoles();
  return labels;
}
const LabelSet &Ner() {
  static const LabelSet labels = LabelSet::DefaultEntities();
  return labels;
}

std::string NestedRecord(const std::string &id, const std::string &text,
                         const std::string &results) {
  return R"({"id": ")" + id + R"(", "data": {"text": ")" + text +
         R"("}, "annotations": [{"result": [)" + results + "]}]}";
}

std::string Result(int start, int end, const std::string &label) {
  return R"({"value": {"start": )" + std::to_string(start) + R"(, "end": )" +
         std::to_string(end) + R"(, "labels": [")" + label + R"("]}})";
}

TEST_CASE("default label sets") {
  CHECK(Rr().size() == 13);
  CHECK(Ner().size() == 14);
  CHECK(Rr().Find("PRE_NOT_RELIED").has_value());
  CHECK(Rr().Find("PREAMBLE") == 0);
  CHECK_FALSE(Rr().Find("PREMABLE").has_value());
  for (int i = 0; i < Ner().size(); ++i) CHECK(Ner().Find(Ner().name(i)) == i);
  CHECK_THROWS_AS(LabelSet({"A", "A"}, LabelKind::kEntity), ConfigError);
  CHECK_THROWS_AS(Rr().name(13), ContractError);
}

TEST_CASE("label files in the repository match the built-in defaults") {
  const std::filesystem::path dir = std::filesystem::path(LEGALSEQ_SOURCE_DIR) / "config";
  CHECK(LabelSet::Load(dir / "rr_labels.txt", LabelKind::kRhetoricalRole) == Rr());
  CHECK(LabelSet::Load(dir / "ner_labels.txt", LabelKind::kEntity) == Ner());
}

TEST_CASE("well-formed two-document file") {
  const std::string json =
      "[" +
      NestedRecord("1", "Heard. Dismissed.",
                   Result(0, 6, "PREAMBLE") + "," + Result(7, 17, "RPC")) +
      "," + NestedRecord("2", "Relied on X.", Result(0, 12, "PRE_NOT_RELIED")) +
      "]";
  const RrCorpus corpus = ParseRrCorpus(json, Rr());
  REQUIRE(corpus.documents.size() == 2);
  CHECK(corpus.format == CorpusFormat::kTaskNested);
  CHECK(corpus.documents[0].sentences.size() == 2);
  CHECK(corpus.documents[0].sentences[1].surface == "Dismissed.");
  CHECK(corpus.documents[1].sentences[0].rr_label == *Rr().Find("PRE_NOT_RELIED"));
  CHECK(corpus.documents[0].numeric_id == false);
}

TEST_CASE("empty lines are preserved and offsets never re-based") {
  const std::string text = "First.\\n\\n\\nSecond.";
  const RrCorpus corpus = ParseRrCorpus(
      "[" + NestedRecord("d", text, Result(0, 6, "FAC") + "," + Result(9, 16, "RLC")) +
          "]",
      Rr());
  const Document &doc = corpus.documents[0];
  CHECK(doc.text == "First.\n\n\nSecond.");
  CHECK(doc.sentences[1].start_char == 9);
  CHECK(doc.sentences[1].surface == "Second.");
}

TEST_CASE("offset beyond the text is an integrity error naming the document") {
  const std::string json = "[" + NestedRecord("judgment-7", "Short.", Result(0, 40, "FAC")) + "]";
  try {
    ParseRrCorpus(json, Rr());
    FAIL("expected IntegrityError");
  } catch (const IntegrityError &e) {
    CHECK(e.doc_id() == "judgment-7");
    CHECK(std::string(e.what()).find("judgment-7") != std::string::npos);
  }
}

TEST_CASE("unknown labels are listed together") {
  const std::string json =
      "[" + NestedRecord("a", "One. Two.", Result(0, 4, "BOGUS") + "," + Result(5, 9, "ALSO_BAD")) + "]";
  try {
    ParseRrCorpus(json, Rr());
    FAIL("expected LabelError");
  } catch (const LabelError &e) {
    const std::string what = e.what();
    CHECK(what.find("BOGUS") != std::string::npos);
    CHECK(what.find("ALSO_BAD") != std::string::npos);
  }
}

TEST_CASE("malformed JSON reports a byte position") {
  try {
    ParseRrCorpus("[{\"id\": 1,, }]", Rr());
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.byte_offset() == 11);
  }
}

TEST_CASE("overlapping sentences are rejected") {
  const std::string json =
      "[" + NestedRecord("x", "abcdefgh", Result(0, 5, "FAC") + "," + Result(3, 8, "FAC")) + "]";
  CHECK_THROWS_AS(ParseRrCorpus(json, Rr()), IntegrityError);
}

TEST_CASE("sentences come back sorted by offset") {
  const std::string json =
      "[" + NestedRecord("x", "One. Two.", Result(5, 9, "RPC") + "," + Result(0, 4, "FAC")) + "]";
  const Document doc = ParseRrCorpus(json, Rr()).documents[0];
  CHECK(doc.sentences[0].start_char == 0);
  CHECK(doc.sentences[1].start_char == 5);
}

TEST_CASE("offsets are code points") {
  const std::string json =
      "[" + NestedRecord("u", "Caf\xC3\xA9 r\xC3\xA9sum\xC3\xA9.", Result(5, 12, "FAC")) + "]";
  const Document doc = ParseRrCorpus(json, Rr()).documents[0];
  CHECK(doc.sentences[0].surface == "r\xC3\xA9sum\xC3\xA9.");
}

const char *kNerFlat = R"([{"id": "n1", "text": "the petitioner John",
  "annotations": [{"start": 4, "end": 14, "label": "PETITIONER", "text": "petitioner"}]}])";

TEST_CASE("consistent entity spans are accepted") {
  const NerCorpus corpus = ParseNerCorpus(kNerFlat, Ner());
  REQUIRE(corpus.documents.size() == 1);
  CHECK(corpus.format == CorpusFormat::kFlat);
  REQUIRE(corpus.documents[0].spans.size() == 1);
  CHECK(corpus.documents[0].spans[0].surface == "petitioner");
  CHECK(corpus.documents[0].spans[0].label == *Ner().Find("PETITIONER"));
}

TEST_CASE("overlapping entity spans name both spans") {
  const char *json = R"([{"id": "n1", "text": "the petitioner John",
    "annotations": [{"start": 4, "end": 14, "label": "PETITIONER"},
                    {"start": 10, "end": 19, "label": "JUDGE"}]}])";
  try {
    ParseNerCorpus(json, Ner());
    FAIL("expected OverlapError");
  } catch (const OverlapError &e) {
    const std::string what = e.what();
    CHECK(what.find("4, 14") != std::string::npos);
    CHECK(what.find("10, 19") != std::string::npos);
    CHECK(what.find("JUDGE") != std::string::npos);
  }
}

TEST_CASE("surface text that disagrees with the slice is an integrity error") {
  const char *json = R"([{"id": "n1", "text": "the petitioner John",
    "annotations": [{"start": 4, "end": 14, "label": "PETITIONER", "text": "respondent"}]}])";
  CHECK_THROWS_AS(ParseNerCorpus(json, Ner()), IntegrityError);
}

TEST_CASE("load then serialize then load is the identity") {
  const std::string nested =
      "[" + NestedRecord("1", "Heard.\\n\\nDismissed.", Result(0, 6, "PREAMBLE") + "," + Result(8, 18, "RPC")) +
      "]";
  const RrCorpus a = ParseRrCorpus(nested, Rr());
  const std::string text = SerializeRrCorpus(a, Rr());
  const RrCorpus b = ParseRrCorpus(text, Rr());
  CHECK(SerializeRrCorpus(b, Rr()) == text);
  REQUIRE(b.documents.size() == 1);
  CHECK(b.documents[0].text == a.documents[0].text);
  for (size_t i = 0; i < a.documents[0].sentences.size(); ++i) {
    CHECK(b.documents[0].sentences[i].start_char == a.documents[0].sentences[i].start_char);
    CHECK(b.documents[0].sentences[i].rr_label == a.documents[0].sentences[i].rr_label);
  }

  const NerCorpus n = ParseNerCorpus(kNerFlat, Ner());
  const std::string ntext = SerializeNerCorpus(n, Ner());
  const NerCorpus m = ParseNerCorpus(ntext, Ner());
  CHECK(m.documents[0].spans == n.documents[0].spans);
  CHECK(SerializeNerCorpus(m, Ner()) == ntext);
}

TEST_CASE("two loads of one file are identical") {
  const auto path = std::filesystem::temp_directory_path() / "legalseq_corpus_test.json";
  WriteTextFile(path, kNerFlat);
  const NerCorpus a = LoadNerCorpus(path, Ner());
  const NerCorpus b = LoadNerCorpus(path, Ner());
  CHECK(SerializeNerCorpus(a, Ner()) == SerializeNerCorpus(b, Ner()));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(LoadNerCorpus(path, Ner()), IoError);
}

TEST_CASE("tokenizer splits words and punctuation with offsets") {
  const auto tokens = Tokenize("The court, (2019) held.");
  const std::vector<std::string> want = {"The", "court", ",", "(", "2019", ")", "held", "."};
  CHECK(Surfaces(tokens) == want);
  CHECK(tokens[1].start_char == 4);
  CHECK(tokens[1].end_char == 9);
  CHECK(tokens[4].start_char == 12);
}

TEST_CASE("to_bio on supreme court") {
  const auto tokens = Tokenize("the supreme court");
  EntitySpan court{4, 17, *Ner().Find("COURT"), ""};
  const TagSequence seq = ToBio(tokens, {court}, Ner());
  const int k = *Ner().Find("COURT");
  CHECK(seq.tags == std::vector<int>{bio::kOutside, bio::Begin(k), bio::Inside(k)});
  CHECK(ToBio(tokens, {}, Ner()).tags == std::vector<int>{0, 0, 0});
}

TEST_CASE("from_bio decodes runs and repairs a stray inside tag") {
  const int k = *Ner().Find("COURT");
  TagSequence seq{Tokenize("the supreme court"), {0, bio::Begin(k), bio::Inside(k)}};
  const auto spans = FromBio(seq, Ner());
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].start_char == 4);
  CHECK(spans[0].end_char == 17);

  TagSequence stray{Tokenize("court"), {bio::Inside(k)}};
  const auto repaired = FromBio(stray, Ner());
  REQUIRE(repaired.size() == 1);
  CHECK(repaired[0].label == k);
  CHECK_THROWS_AS(FromBio(stray, Ner(), BioRepair::kStrict), ContractError);
  CHECK(RepairBio({bio::Inside(k)}) == std::vector<int>{bio::Begin(k)});
  CHECK_FALSE(IsValidBio({bio::Inside(k)}));
  CHECK(IsValidBio(RepairBio({0, bio::Inside(2), bio::Inside(3), bio::Begin(1)})));
}

TEST_CASE("misaligned spans: expand snaps outward, strict reports boundaries") {
  const auto tokens = Tokenize("the supreme court");
  EntitySpan partial{6, 15, 0, ""};
  BioStats stats;
  const TagSequence seq = ToBio(tokens, {partial}, Ner(), AlignmentPolicy::kExpand, &stats);
  CHECK(seq.tags == std::vector<int>{0, bio::Begin(0), bio::Inside(0)});
  CHECK(stats.expanded == 1);
  try {
    ToBio(tokens, {partial}, Ner(), AlignmentPolicy::kStrict);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError &e) {
    const std::string what = e.what();
    CHECK(what.find("[6, 15, COURT]") != std::string::npos);
    CHECK(what.find("[4, 17)") != std::string::npos);
  }
}

TEST_CASE("random aligned span layouts survive from_bio after to_bio") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string text = testing::RandomText(rng, 1 + static_cast<int>(rng.UniformInt(30)));
    const auto tokens = Tokenize(text);
    const auto spans = testing::RandomAlignedSpans(rng, tokens, Ner().size(), 4);
    const TagSequence seq = ToBio(tokens, spans, Ner(), AlignmentPolicy::kStrict);
    CHECK(IsValidBio(seq.tags));
    CHECK(FromBio(seq, Ner(), BioRepair::kStrict) == spans);
  }
}

TEST_CASE("random valid BIO sequences survive to_bio after from_bio") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tokens = Tokenize(testing::RandomText(rng, 1 + static_cast<int>(rng.UniformInt(25))));
    std::vector<int> tags = RepairBio([&] {
      std::vector<int> t;
      for (size_t i = 0; i < tokens.size(); ++i) {
        t.push_back(static_cast<int>(rng.UniformInt(static_cast<uint64_t>(bio::NumTags(Ner())))));
      }
      return t;
    }());
    TagSequence seq{tokens, tags};
    CHECK(ToBio(tokens, FromBio(seq, Ner()), Ner()).tags == tags);
  }
}

TEST_CASE("stats: one sentence of three tokens") {
  Document doc{"d", false, "a b c", {{0, 5, "a b c", 0}}};
  const CorpusStats stats = ComputeStats(std::vector<Document>{doc}, Rr(), 1);
  CHECK(stats.sentence_length_histogram == std::map<int, int>{{3, 1}});
  CHECK(stats.doc_count == 1);
  CHECK(stats.sentence_count == 1);
  CHECK(stats.short_sentence_count == 1);
  CHECK(stats.class_counts.size() == 13);
  CHECK(stats.class_counts[0].second == 1);
}

TEST_CASE("stats: empty corpus has zero counts") {
  const CorpusStats stats = ComputeStats(std::vector<Document>{}, Rr());
  CHECK(stats.doc_count == 0);
  CHECK(stats.sentence_count == 0);
  CHECK(stats.sentence_length_histogram.empty());
  int total = 0;
  for (const auto &[name, count] : stats.class_counts) total += count;
  CHECK(total == 0);
}

TEST_CASE("stats: class counts sum to labeled sentences and histogram mass to sentences") {
  Rng rng(5);
  std::vector<Document> docs;
  for (int d = 0; d < 5; ++d) {
    Document doc;
    doc.doc_id = std::to_string(d);
    int offset = 0;
    for (int s = 0; s < 6; ++s) {
      const std::string sentence = testing::RandomText(rng, 1 + static_cast<int>(rng.UniformInt(40)));
      const int len = static_cast<int>(utf8::Length(sentence));
      std::optional<int> label;
      if (rng.Bernoulli(0.8)) label = static_cast<int>(rng.UniformInt(13));
      doc.sentences.push_back({offset, offset + len, sentence, label});
      doc.text += sentence + " ";
      offset += len + 1;
    }
    docs.push_back(doc);
  }
  const CorpusStats stats = ComputeStats(docs, Rr(), 5);
  int mass = 0, classes = 0;
  for (const auto &[bucket, n] : stats.sentence_length_histogram) {
    CHECK(bucket % 5 == 0);
    mass += n;
  }
  for (const auto &[name, n] : stats.class_counts) classes += n;
  CHECK(mass == stats.sentence_count);
  CHECK(classes == stats.labeled_sentence_count);
}

TEST_CASE("synthetic rr corpus is consistent and reproducible") {
  const LabelSet labels = LabelSet::DefaultRhetoricalRoles();
  const auto docs = SyntheticRrDocuments({}, labels);
  REQUIRE(docs.size() == 20);
  std::set<int> seen;
  for (const auto &d : docs) {
    REQUIRE(d.sentences.size() == 8);
    const utf8::CodepointIndex index(d.text);
    for (const auto &s : d.sentences) {
      CHECK(index.Slice(d.text, s.start_char, s.end_char) == s.surface);
      REQUIRE(s.rr_label.has_value());
      CHECK(*s.rr_label < 4);
      seen.insert(*s.rr_label);
    }
  }
  CHECK(seen.size() == 4);
  // Survives a serialize/parse round trip.
  const RrCorpus back = ParseRrCorpus(SerializeRrCorpus({CorpusFormat::kTaskNested, docs}, labels),
                                      labels);
  CHECK(back.documents.size() == docs.size());
  CHECK(SyntheticRrDocuments({}, labels)[3].text == docs[3].text);
  SyntheticRrOptions other;
  other.seed = 7;
  CHECK(SyntheticRrDocuments(other, labels)[0].text != docs[0].text);
  other.classes = 14;
  CHECK_THROWS_AS(SyntheticRrDocuments(other, labels), ConfigError);
}

TEST_CASE("synthetic entity corpus aligns with the reference tokenizer") {
  const LabelSet labels = LabelSet::DefaultEntities();
  const auto docs = SyntheticNerDocuments({}, labels);
  REQUIRE(docs.size() == 50);
  std::set<int> types;
  for (const auto &d : docs) {
    for (const auto &s : d.spans) {
      CHECK(d.text.substr(static_cast<size_t>(s.start_char),
                          static_cast<size_t>(s.end_char - s.start_char)) == s.surface);
      types.insert(s.label);
    }
    BioStats st;
    const TagSequence tags = ToBio(Tokenize(d.text), d.spans, labels, AlignmentPolicy::kStrict, &st);
    CHECK(FromBio(tags, labels) == d.spans);
    CHECK(st.expanded == 0);
  }
  CHECK(types == std::set<int>{0, 1, 2});
}

}  // namespace
}  // namespace legalseq
