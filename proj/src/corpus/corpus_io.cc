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

#include "legalseq/corpus/corpus_io.h"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "legalseq/base/errors.h"
#include "legalseq/base/utf8.h"

namespace legalseq {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct RawAnnotation {
  long start = 0;
  long end = 0;
  std::optional<std::string> label;
  std::optional<std::string> text;
};

struct RawRecord {
  std::string id;
  bool numeric_id = false;
  std::string text;
  std::vector<RawAnnotation> annotations;
};

[[noreturn]] void SchemaError(const std::string &origin, size_t record,
                              const std::string &what) {
  throw ParseError(origin + ": record " + std::to_string(record) + ": " + what,
                   0);
}

long GetOffset(const json &obj, const char *key, const std::string &origin,
               size_t record) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    SchemaError(origin, record,
                std::string("annotation lacks integer '") + key + "'");
  }
  return it->get<long>();
}

RawAnnotation ParseNestedResult(const json &result, const std::string &origin,
                                size_t record) {
  auto value = result.find("value");
  if (value == result.end() || !value->is_object()) {
    SchemaError(origin, record, "annotation result lacks a 'value' object");
  }
  RawAnnotation ann;
  ann.start = GetOffset(*value, "start", origin, record);
  ann.end = GetOffset(*value, "end", origin, record);
  auto labels = value->find("labels");
  if (labels != value->end() && labels->is_array() && !labels->empty()) {
    ann.label = (*labels)[0].get<std::string>();
  }
  auto text = value->find("text");
  if (text != value->end() && text->is_string()) ann.text = text->get<std::string>();
  return ann;
}

RawAnnotation ParseFlatAnnotation(const json &obj, const std::string &origin,
                                  size_t record) {
  RawAnnotation ann;
  ann.start = GetOffset(obj, "start", origin, record);
  ann.end = GetOffset(obj, "end", origin, record);
  auto label = obj.find("label");
  if (label != obj.end() && label->is_string()) ann.label = label->get<std::string>();
  auto text = obj.find("text");
  if (text != obj.end() && text->is_string()) ann.text = text->get<std::string>();
  return ann;
}

std::vector<RawRecord> ParseRecords(const std::string &json_text,
                                    const std::string &origin,
                                    CorpusFormat *format) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ParseError(origin + ": malformed JSON at byte " +
                         std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
  if (!root.is_array()) {
    throw ParseError(origin + ": top-level JSON value must be an array", 0);
  }
  std::vector<RawRecord> records;
  *format = CorpusFormat::kTaskNested;
  bool format_known = false;
  for (size_t i = 0; i < root.size(); ++i) {
    const json &rec = root[i];
    if (!rec.is_object()) SchemaError(origin, i, "record is not an object");
    RawRecord out;
    auto id = rec.find("id");
    if (id == rec.end()) SchemaError(origin, i, "record lacks 'id'");
    if (id->is_string()) {
      out.id = id->get<std::string>();
    } else if (id->is_number_integer()) {
      out.id = std::to_string(id->get<long long>());
      out.numeric_id = true;
    } else {
      SchemaError(origin, i, "'id' must be a string or integer");
    }
    const bool nested = rec.contains("data");
    if (!format_known) {
      *format = nested ? CorpusFormat::kTaskNested : CorpusFormat::kFlat;
      format_known = true;
    }
    if (nested) {
      const json &data = rec["data"];
      if (!data.is_object() || !data.contains("text") || !data["text"].is_string()) {
        SchemaError(origin, i, "'data.text' must be a string");
      }
      out.text = data["text"].get<std::string>();
      auto anns = rec.find("annotations");
      if (anns != rec.end() && anns->is_array() && !anns->empty()) {
        const json &first = (*anns)[0];
        auto results = first.find("result");
        if (results != first.end() && results->is_array()) {
          for (const json &r : *results) {
            out.annotations.push_back(ParseNestedResult(r, origin, i));
          }
        }
      }
    } else {
      auto text = rec.find("text");
      if (text == rec.end() || !text->is_string()) {
        SchemaError(origin, i, "record lacks string 'text'");
      }
      out.text = text->get<std::string>();
      auto anns = rec.find("annotations");
      if (anns != rec.end() && anns->is_array()) {
        for (const json &a : *anns) {
          out.annotations.push_back(ParseFlatAnnotation(a, origin, i));
        }
      }
    }
    records.push_back(std::move(out));
  }
  return records;
}

// Validates offsets and returns the slice of text they cover.
std::string CheckedSlice(const RawRecord &rec, const utf8::CodepointIndex &index,
                         const RawAnnotation &ann) {
  const long len = static_cast<long>(index.size());
  if (ann.start < 0 || ann.end <= ann.start || ann.end > len) {
    throw IntegrityError("document '" + rec.id + "': annotation [" +
                             std::to_string(ann.start) + ", " +
                             std::to_string(ann.end) +
                             ") out of range for text of length " +
                             std::to_string(len),
                         rec.id);
  }
  std::string surface = index.Slice(rec.text, static_cast<size_t>(ann.start),
                                    static_cast<size_t>(ann.end));
  if (ann.text.has_value() && *ann.text != surface) {
    throw IntegrityError("document '" + rec.id + "': annotation [" +
                             std::to_string(ann.start) + ", " +
                             std::to_string(ann.end) +
                             ") text does not match the document slice",
                         rec.id);
  }
  return surface;
}

void ThrowUnknownLabels(const std::set<std::string> &unknown,
                        const std::string &origin, const LabelSet &labels) {
  if (unknown.empty()) return;
  std::string list;
  for (const auto &u : unknown) {
    if (!list.empty()) list += ", ";
    list += "'" + u + "'";
  }
  throw LabelError(origin + ": labels not in the " +
                   std::string(LabelKindName(labels.kind())) +
                   " label set: " + list);
}

ordered_json IdJson(const std::string &id, bool numeric) {
  if (numeric) return ordered_json(std::stoll(id));
  return ordered_json(id);
}

ordered_json NestedRecord(const std::string &id, bool numeric,
                          const std::string &text, ordered_json results) {
  ordered_json rec;
  rec["id"] = IdJson(id, numeric);
  ordered_json ann;
  ann["result"] = std::move(results);
  rec["annotations"] = ordered_json::array({ann});
  rec["data"] = {{"text", text}};
  return rec;
}

ordered_json NestedResult(const std::string &id, int start, int end,
                          const std::string &surface,
                          const std::optional<std::string> &label) {
  ordered_json r;
  r["id"] = id;
  ordered_json value;
  value["start"] = start;
  value["end"] = end;
  value["text"] = surface;
  value["labels"] = label ? ordered_json::array({*label}) : ordered_json::array();
  r["value"] = std::move(value);
  r["from_name"] = "label";
  r["to_name"] = "text";
  r["type"] = "labels";
  return r;
}

ordered_json FlatAnnotation(int start, int end, const std::string &surface,
                            const std::optional<std::string> &label) {
  ordered_json a;
  a["start"] = start;
  a["end"] = end;
  if (label) a["label"] = *label;
  a["text"] = surface;
  return a;
}

std::string Dump(const ordered_json &j) {
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

RrCorpus ParseRrCorpus(const std::string &json_text, const LabelSet &labels,
                       const std::string &origin) {
  RrCorpus corpus;
  auto records = ParseRecords(json_text, origin, &corpus.format);
  std::set<std::string> unknown;
  for (const RawRecord &rec : records) {
    for (const RawAnnotation &a : rec.annotations) {
      if (a.label && !labels.Find(*a.label)) unknown.insert(*a.label);
    }
  }
  ThrowUnknownLabels(unknown, origin, labels);

  for (RawRecord &rec : records) {
    Document doc;
    doc.doc_id = rec.id;
    doc.numeric_id = rec.numeric_id;
    const utf8::CodepointIndex index(rec.text);
    for (const RawAnnotation &a : rec.annotations) {
      SentenceSpan s;
      s.start_char = static_cast<int>(a.start);
      s.end_char = static_cast<int>(a.end);
      s.surface = CheckedSlice(rec, index, a);
      if (a.label) s.rr_label = *labels.Find(*a.label);
      doc.sentences.push_back(std::move(s));
    }
    std::stable_sort(doc.sentences.begin(), doc.sentences.end(),
                     [](const SentenceSpan &x, const SentenceSpan &y) {
                       return x.start_char < y.start_char;
                     });
    for (size_t i = 1; i < doc.sentences.size(); ++i) {
      const auto &prev = doc.sentences[i - 1];
      const auto &cur = doc.sentences[i];
      if (cur.start_char < prev.end_char) {
        throw IntegrityError(
            "document '" + rec.id + "': sentences [" +
                std::to_string(prev.start_char) + ", " +
                std::to_string(prev.end_char) + ") and [" +
                std::to_string(cur.start_char) + ", " +
                std::to_string(cur.end_char) + ") overlap",
            rec.id);
      }
    }
    doc.text = std::move(rec.text);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

RrCorpus LoadRrCorpus(const std::filesystem::path &path, const LabelSet &labels) {
  return ParseRrCorpus(ReadTextFile(path), labels, path.string());
}

NerCorpus ParseNerCorpus(const std::string &json_text, const LabelSet &labels,
                         const std::string &origin) {
  NerCorpus corpus;
  auto records = ParseRecords(json_text, origin, &corpus.format);
  std::set<std::string> unknown;
  for (const RawRecord &rec : records) {
    for (const RawAnnotation &a : rec.annotations) {
      if (!a.label) {
        throw LabelError(origin + ": document '" + rec.id +
                         "': entity annotation without a label");
      }
      if (!labels.Find(*a.label)) unknown.insert(*a.label);
    }
  }
  ThrowUnknownLabels(unknown, origin, labels);

  for (RawRecord &rec : records) {
    NerDocument doc;
    doc.doc_id = rec.id;
    doc.numeric_id = rec.numeric_id;
    const utf8::CodepointIndex index(rec.text);
    for (const RawAnnotation &a : rec.annotations) {
      EntitySpan s;
      s.start_char = static_cast<int>(a.start);
      s.end_char = static_cast<int>(a.end);
      s.surface = CheckedSlice(rec, index, a);
      s.label = *labels.Find(*a.label);
      doc.spans.push_back(std::move(s));
    }
    std::stable_sort(doc.spans.begin(), doc.spans.end(),
                     [](const EntitySpan &x, const EntitySpan &y) {
                       if (x.start_char != y.start_char) return x.start_char < y.start_char;
                       return x.end_char < y.end_char;
                     });
    for (size_t i = 1; i < doc.spans.size(); ++i) {
      const auto &prev = doc.spans[i - 1];
      const auto &cur = doc.spans[i];
      if (cur.start_char < prev.end_char) {
        throw OverlapError(
            origin + ": document '" + rec.id + "': entity spans [" +
            std::to_string(prev.start_char) + ", " +
            std::to_string(prev.end_char) + ", " + labels.name(prev.label) +
            "] and [" + std::to_string(cur.start_char) + ", " +
            std::to_string(cur.end_char) + ", " + labels.name(cur.label) +
            "] overlap");
      }
    }
    doc.text = std::move(rec.text);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

NerCorpus LoadNerCorpus(const std::filesystem::path &path,
                        const LabelSet &labels) {
  return ParseNerCorpus(ReadTextFile(path), labels, path.string());
}

std::string SerializeRrCorpus(const RrCorpus &corpus, const LabelSet &labels) {
  ordered_json root = ordered_json::array();
  for (const Document &doc : corpus.documents) {
    if (corpus.format == CorpusFormat::kTaskNested) {
      ordered_json results = ordered_json::array();
      for (size_t i = 0; i < doc.sentences.size(); ++i) {
        const SentenceSpan &s = doc.sentences[i];
        std::optional<std::string> label;
        if (s.rr_label) label = labels.name(*s.rr_label);
        results.push_back(NestedResult(doc.doc_id + "_" + std::to_string(i),
                                       s.start_char, s.end_char, s.surface,
                                       label));
      }
      root.push_back(NestedRecord(doc.doc_id, doc.numeric_id, doc.text,
                                  std::move(results)));
    } else {
      ordered_json rec;
      rec["id"] = IdJson(doc.doc_id, doc.numeric_id);
      rec["text"] = doc.text;
      ordered_json anns = ordered_json::array();
      for (const SentenceSpan &s : doc.sentences) {
        std::optional<std::string> label;
        if (s.rr_label) label = labels.name(*s.rr_label);
        anns.push_back(FlatAnnotation(s.start_char, s.end_char, s.surface, label));
      }
      rec["annotations"] = std::move(anns);
      root.push_back(std::move(rec));
    }
  }
  return Dump(root);
}

std::string SerializeNerCorpus(const NerCorpus &corpus, const LabelSet &labels) {
  ordered_json root = ordered_json::array();
  for (const NerDocument &doc : corpus.documents) {
    if (corpus.format == CorpusFormat::kTaskNested) {
      ordered_json results = ordered_json::array();
      for (size_t i = 0; i < doc.spans.size(); ++i) {
        const EntitySpan &s = doc.spans[i];
        results.push_back(NestedResult(doc.doc_id + "_" + std::to_string(i),
                                       s.start_char, s.end_char, s.surface,
                                       labels.name(s.label)));
      }
      root.push_back(NestedRecord(doc.doc_id, doc.numeric_id, doc.text,
                                  std::move(results)));
    } else {
      ordered_json rec;
      rec["id"] = IdJson(doc.doc_id, doc.numeric_id);
      rec["text"] = doc.text;
      ordered_json anns = ordered_json::array();
      for (const EntitySpan &s : doc.spans) {
        anns.push_back(FlatAnnotation(s.start_char, s.end_char, s.surface,
                                      labels.name(s.label)));
      }
      rec["annotations"] = std::move(anns);
      root.push_back(std::move(rec));
    }
  }
  return Dump(root);
}

}  // namespace legalseq
