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

#include "legalseq/encoder/subword.h"

#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "legalseq/base/errors.h"
#include "legalseq/base/utf8.h"
#include "legalseq/corpus/corpus_io.h"

namespace legalseq {
namespace {

using json = nlohmann::json;

// Base letters of the Latin-1 and Latin Extended-A letters that decompose
// canonically into letter + combining mark; '.' marks no decomposition.
constexpr char kLatin1Bases[] =
    "AAAAAA.CEEEEIIII.NOOOOO..UUUUY..aaaaaa.ceeeeiiii.nooooo..uuuuy.y";
constexpr char kLatinExtABases[] =
    "AaAaAaCcCcCcCcDd..EeEeEeEeEeGgGgGgGgHh..IiIiIiIiI...JjKk.LlLlLl....NnNnNn..."
    "OoOoOo..RrRrRrSsSsSsSsTtTt..UuUuUuUuUuUuWwYyYZzZzZz.";

char32_t StripAccent(char32_t c) {
  if (c >= 0xC0 && c <= 0xFF) {
    const char b = kLatin1Bases[c - 0xC0];
    return b == '.' ? c : static_cast<char32_t>(b);
  }
  if (c >= 0x100 && c <= 0x17F) {
    const char b = kLatinExtABases[c - 0x100];
    return b == '.' ? c : static_cast<char32_t>(b);
  }
  return c;
}

bool IsCombiningMark(char32_t c) { return c >= 0x300 && c <= 0x36F; }

bool IsCjk(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF) ||
         (c >= 0x20000 && c <= 0x2A6DF) || (c >= 0xF900 && c <= 0xFAFF) ||
         (c >= 0x2F800 && c <= 0x2FA1F);
}

bool IsBertPunct(char32_t c) {
  if ((c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
      (c >= 123 && c <= 126)) {
    return true;
  }
  return c >= 0x80 && utf8::IsPunct(c);
}

// GPT-2 byte-to-symbol table: printable bytes map to themselves, the rest to
// code points from U+0100 upwards.
const std::vector<std::string> &ByteSymbols() {
  static const std::vector<std::string> table = [] {
    std::vector<std::string> t(256);
    int next = 0;
    for (int b = 0; b < 256; ++b) {
      const bool printable = (b >= 33 && b <= 126) || (b >= 161 && b <= 172) ||
                             (b >= 174 && b <= 255);
      const char32_t cp = printable ? static_cast<char32_t>(b)
                                    : static_cast<char32_t>(256 + next++);
      t[static_cast<size_t>(b)] = utf8::Encode(cp);
    }
    return t;
  }();
  return table;
}

// GPT-2 pre-tokenizer split: contractions, then runs of letters, digits or
// other non-space characters, each run taking one preceding space.
std::vector<std::string> ByteLevelSplit(const std::string &text) {
  enum Kind { kLetter, kNumber, kOther, kSpace };
  auto kind = [](char32_t c) {
    if (utf8::IsSpace(c)) return kSpace;
    if (utf8::IsDigit(c)) return kNumber;
    if (utf8::IsLetter(c)) return kLetter;
    return kOther;
  };
  const std::u32string s = utf8::Decode(text);
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == U'\'') {
      bool matched = false;
      for (const char32_t *c : {U"s", U"t", U"re", U"ve", U"m", U"ll", U"d"}) {
        const std::u32string suffix(c);
        if (s.compare(i + 1, suffix.size(), suffix) == 0) {
          out.push_back(utf8::Encode(s.substr(i, suffix.size() + 1)));
          i += suffix.size() + 1;
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    const size_t start = i;
    if (s[i] == U' ' && i + 1 < s.size() && kind(s[i + 1]) != kSpace) ++i;
    const Kind k = kind(s[i]);
    if (k == kSpace) {
      while (i < s.size() && kind(s[i]) == kSpace) ++i;
    } else {
      while (i < s.size() && kind(s[i]) == k) ++i;
    }
    out.push_back(utf8::Encode(s.substr(start, i - start)));
  }
  return out;
}

const json *FindPreTokenizer(const json &pre, const std::string &type) {
  if (!pre.is_object()) return nullptr;
  if (pre.value("type", "") == type) return &pre;
  if (pre.value("type", "") == "Sequence" && pre.contains("pretokenizers")) {
    for (const json &p : pre["pretokenizers"]) {
      if (p.value("type", "") == type) return &p;
    }
  }
  return nullptr;
}

std::unordered_map<std::string, int> VocabMap(const json &vocab) {
  std::unordered_map<std::string, int> out;
  for (auto it = vocab.begin(); it != vocab.end(); ++it) out[it.key()] = it.value().get<int>();
  return out;
}

std::unique_ptr<SubwordTokenizer> FromTokenizerJson(const std::filesystem::path &path) {
  json root;
  try {
    root = json::parse(ReadTextFile(path));
  } catch (const json::parse_error &e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
  const json &model = root.at("model");
  const std::string type = model.value("type", "");
  std::unique_ptr<SubwordTokenizer> tok;
  if (type == "WordPiece") {
    bool lowercase = false, strip = false;
    const json &norm = root["normalizer"];
    if (norm.is_object() && norm.value("type", "") == "BertNormalizer") {
      lowercase = norm.value("lowercase", true);
      strip = norm.contains("strip_accents") && !norm["strip_accents"].is_null()
                  ? norm["strip_accents"].get<bool>()
                  : lowercase;
    }
    tok = std::make_unique<WordPieceTokenizer>(
        VocabMap(model.at("vocab")), lowercase, strip, model.value("unk_token", "[UNK]"),
        model.value("continuing_subword_prefix", "##"),
        model.value("max_input_chars_per_word", static_cast<size_t>(100)));
  } else if (type == "Unigram") {
    std::vector<std::pair<std::string, double>> pieces;
    for (const json &p : model.at("vocab")) pieces.emplace_back(p[0].get<std::string>(), p[1].get<double>());
    std::string replacement = "\xE2\x96\x81";
    if (const json *meta = FindPreTokenizer(root["pre_tokenizer"], "Metaspace")) {
      replacement = meta->value("replacement", replacement);
    }
    const int unk = model.contains("unk_id") && !model["unk_id"].is_null() ? model["unk_id"].get<int>() : -1;
    tok = std::make_unique<UnigramTokenizer>(std::move(pieces), unk, replacement);
  } else if (type == "BPE") {
    if (!FindPreTokenizer(root["pre_tokenizer"], "ByteLevel")) {
      throw ConfigError(path.string() + ": only byte-level BPE tokenizers are supported");
    }
    std::vector<std::pair<std::string, std::string>> merges;
    for (const json &m : model.at("merges")) {
      if (m.is_string()) {
        const std::string s = m.get<std::string>();
        const size_t sp = s.find(' ');
        merges.emplace_back(s.substr(0, sp), s.substr(sp + 1));
      } else {
        merges.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
      }
    }
    std::string unk = model.contains("unk_token") && model["unk_token"].is_string()
                          ? model["unk_token"].get<std::string>()
                          : "";
    tok = std::make_unique<ByteBpeTokenizer>(VocabMap(model.at("vocab")), merges, unk);
  } else {
    throw ConfigError(path.string() + ": unsupported tokenizer model '" + type + "'");
  }
  return tok;
}

}  // namespace

int SubwordTokenizer::TokenId(const std::string &piece) const {
  auto it = vocab_.find(piece);
  return it == vocab_.end() ? -1 : it->second;
}

void SubwordTokenizer::ResolveSpecials() {
  auto first = [&](std::initializer_list<const char *> names) {
    for (const char *n : names) {
      if (int id = TokenId(n); id >= 0) return id;
    }
    return -1;
  };
  cls_id_ = first({"[CLS]", "<s>"});
  sep_id_ = first({"[SEP]", "</s>"});
  pad_id_ = first({"[PAD]", "<pad>"});
  unk_id_ = first({"[UNK]", "<unk>"});
  mask_id_ = first({"[MASK]", "<mask>"});
}

std::unique_ptr<SubwordTokenizer> SubwordTokenizer::Load(const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  std::unique_ptr<SubwordTokenizer> tok;
  if (fs::exists(dir / "tokenizer.json")) {
    tok = FromTokenizerJson(dir / "tokenizer.json");
    const json root = json::parse(ReadTextFile(dir / "tokenizer.json"));
    if (root.contains("added_tokens")) {
      for (const json &t : root["added_tokens"]) {
        tok->vocab_.emplace(t.at("content").get<std::string>(), t.at("id").get<int>());
      }
    }
  } else if (fs::exists(dir / "vocab.txt")) {
    std::unordered_map<std::string, int> vocab;
    std::istringstream in(ReadTextFile(dir / "vocab.txt"));
    std::string line;
    int id = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      vocab.emplace(line, id++);
    }
    bool lowercase = true;
    if (fs::exists(dir / "tokenizer_config.json")) {
      const json cfg = json::parse(ReadTextFile(dir / "tokenizer_config.json"));
      lowercase = cfg.value("do_lower_case", true);
    }
    tok = std::make_unique<WordPieceTokenizer>(std::move(vocab), lowercase, lowercase);
  } else if (fs::exists(dir / "vocab.json") && fs::exists(dir / "merges.txt")) {
    const json vocab = json::parse(ReadTextFile(dir / "vocab.json"));
    std::vector<std::pair<std::string, std::string>> merges;
    std::istringstream in(ReadTextFile(dir / "merges.txt"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.rfind("#version", 0) == 0) continue;
      const size_t sp = line.find(' ');
      if (sp == std::string::npos) continue;
      merges.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
    tok = std::make_unique<ByteBpeTokenizer>(VocabMap(vocab), merges, "<unk>");
  } else {
    throw ConfigError("no tokenizer.json, vocab.txt or vocab.json+merges.txt in " +
                      dir.string());
  }
  tok->ResolveSpecials();
  return tok;
}

WordPieceTokenizer::WordPieceTokenizer(std::unordered_map<std::string, int> vocab,
                                       bool lowercase, bool strip_accents,
                                       std::string unk_token, std::string prefix,
                                       size_t max_chars)
    : lowercase_(lowercase),
      strip_accents_(strip_accents),
      unk_token_(std::move(unk_token)),
      prefix_(std::move(prefix)),
      max_chars_(max_chars) {
  vocab_ = std::move(vocab);
  ResolveSpecials();
  if (TokenId(unk_token_) < 0) throw ConfigError("WordPiece vocabulary lacks " + unk_token_);
}

std::vector<int> WordPieceTokenizer::Encode(const std::string &word) const {
  // Normalization and BERT pre-tokenization of the word.
  std::vector<std::u32string> pieces(1);
  for (char32_t c : utf8::Decode(word)) {
    if (c == 0 || c == 0xFFFD || (c < 0x20 && !utf8::IsSpace(c)) || c == 0x7F) continue;
    if (lowercase_) c = utf8::ToLower(c);
    if (strip_accents_) {
      if (IsCombiningMark(c)) continue;
      c = StripAccent(c);
    }
    if (utf8::IsSpace(c)) {
      if (!pieces.back().empty()) pieces.emplace_back();
    } else if (IsBertPunct(c) || IsCjk(c)) {
      if (!pieces.back().empty()) pieces.emplace_back();
      pieces.back().push_back(c);
      pieces.emplace_back();
    } else {
      pieces.back().push_back(c);
    }
  }
  const int unk = TokenId(unk_token_);
  std::vector<int> ids;
  for (const auto &piece : pieces) {
    if (piece.empty()) continue;
    if (piece.size() > max_chars_) {
      ids.push_back(unk);
      continue;
    }
    std::vector<int> sub;
    size_t start = 0;
    bool bad = false;
    while (start < piece.size()) {
      size_t end = piece.size();
      int found = -1;
      while (start < end) {
        std::string candidate = utf8::Encode(piece.substr(start, end - start));
        if (start > 0) candidate = prefix_ + candidate;
        if (int id = TokenId(candidate); id >= 0) {
          found = id;
          break;
        }
        --end;
      }
      if (found < 0) {
        bad = true;
        break;
      }
      sub.push_back(found);
      start = end;
    }
    if (bad) {
      ids.push_back(unk);
    } else {
      ids.insert(ids.end(), sub.begin(), sub.end());
    }
  }
  if (ids.empty()) ids.push_back(unk);
  return ids;
}

UnigramTokenizer::UnigramTokenizer(std::vector<std::pair<std::string, double>> pieces,
                                   int unk_id, std::string replacement)
    : replacement_(std::move(replacement)) {
  double min_score = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pieces.size(); ++i) {
    vocab_.emplace(pieces[i].first, static_cast<int>(i));
    scores_.push_back(pieces[i].second);
    min_score = std::min(min_score, pieces[i].second);
    max_piece_chars_ = std::max(max_piece_chars_, utf8::Length(pieces[i].first));
  }
  unk_score_ = min_score - 10.0;
  ResolveSpecials();
  if (unk_id >= 0) unk_id_ = unk_id;
}

std::vector<int> UnigramTokenizer::Encode(const std::string &word) const {
  std::string text = replacement_;
  for (char c : word) {
    if (c == ' ') {
      text += replacement_;
    } else {
      text.push_back(c);
    }
  }
  const std::u32string cps = utf8::Decode(text);
  const size_t n = cps.size();
  constexpr double kUnset = -std::numeric_limits<double>::infinity();
  struct Node {
    double score = kUnset;
    size_t start = 0;
    int id = -1;  // -1: unknown piece
    bool set = false;
  };
  std::vector<Node> best(n + 1);
  best[0].score = 0.0;
  best[0].set = true;
  for (size_t start = 0; start < n; ++start) {
    if (!best[start].set) continue;
    bool single = false;
    const size_t max_len = std::min(max_piece_chars_, n - start);
    for (size_t len = 1; len <= max_len; ++len) {
      auto it = vocab_.find(utf8::Encode(cps.substr(start, len)));
      if (it == vocab_.end() || it->second >= static_cast<int>(scores_.size())) continue;
      const double s = best[start].score + scores_[static_cast<size_t>(it->second)];
      Node &target = best[start + len];
      if (!target.set || s > target.score) target = {s, start, it->second, true};
      if (len == 1) single = true;
    }
    if (!single) {
      const double s = best[start].score + unk_score_;
      Node &target = best[start + 1];
      if (!target.set || s > target.score) target = {s, start, -1, true};
    }
  }
  std::vector<int> reversed;
  bool prev_unk = false;
  for (size_t pos = n; pos > 0; pos = best[pos].start) {
    const int id = best[pos].id;
    if (id < 0) {
      if (!prev_unk) reversed.push_back(unk_id_);
      prev_unk = true;
    } else {
      reversed.push_back(id);
      prev_unk = false;
    }
  }
  std::vector<int> ids(reversed.rbegin(), reversed.rend());
  if (ids.empty()) ids.push_back(unk_id_);
  return ids;
}

ByteBpeTokenizer::ByteBpeTokenizer(std::unordered_map<std::string, int> vocab,
                                   const std::vector<std::pair<std::string, std::string>> &merges,
                                   std::string unk_token)
    : unk_token_(std::move(unk_token)) {
  vocab_ = std::move(vocab);
  for (size_t i = 0; i < merges.size(); ++i) {
    ranks_.emplace(merges[i].first + " " + merges[i].second, static_cast<int>(i));
  }
  ResolveSpecials();
}

std::vector<int> ByteBpeTokenizer::Encode(const std::string &word) const {
  std::vector<int> ids;
  for (const std::string &chunk : ByteLevelSplit(" " + word)) {
    const auto sub = EncodeChunk(chunk);
    ids.insert(ids.end(), sub.begin(), sub.end());
  }
  if (ids.empty()) ids.push_back(std::max(unk_id_, 0));
  return ids;
}

std::vector<int> ByteBpeTokenizer::EncodeChunk(const std::string &chunk) const {
  const auto &symbols = ByteSymbols();
  std::vector<std::string> parts;
  for (unsigned char b : chunk) parts.push_back(symbols[b]);
  while (parts.size() > 1) {
    int best_rank = std::numeric_limits<int>::max();
    size_t best_at = 0;
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
      auto it = ranks_.find(parts[i] + " " + parts[i + 1]);
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best_at = i;
      }
    }
    if (best_rank == std::numeric_limits<int>::max()) break;
    parts[best_at] += parts[best_at + 1];
    parts.erase(parts.begin() + static_cast<long>(best_at) + 1);
  }
  std::vector<int> ids;
  const int unk = unk_token_.empty() ? unk_id_ : TokenId(unk_token_);
  for (const auto &p : parts) {
    const int id = TokenId(p);
    if (id >= 0) {
      ids.push_back(id);
    } else if (unk >= 0) {
      ids.push_back(unk);
    }
  }
  return ids;
}

}  // namespace legalseq
