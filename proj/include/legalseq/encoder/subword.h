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

#ifndef LEGALSEQ_ENCODER_SUBWORD_H_
#define LEGALSEQ_ENCODER_SUBWORD_H_

#include <filesystem>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace legalseq {

// Splits one reference token into subword ids of a pretrained vocabulary.
// Every reference token is treated as a separate word preceded by a space.
class SubwordTokenizer {
 public:
  virtual ~SubwordTokenizer() = default;

  // Never empty; unknown material maps to unk_id().
  virtual std::vector<int> Encode(const std::string &word) const = 0;

  int cls_id() const { return cls_id_; }
  int sep_id() const { return sep_id_; }
  int pad_id() const { return pad_id_; }
  int unk_id() const { return unk_id_; }
  int mask_id() const { return mask_id_; }

  // -1 when absent.
  int TokenId(const std::string &piece) const;
  size_t vocab_size() const { return vocab_.size(); }

  // Reads tokenizer.json when present, otherwise vocab.txt (+
  // tokenizer_config.json). Supported models: WordPiece, Unigram and
  // byte-level BPE.
  static std::unique_ptr<SubwordTokenizer> Load(const std::filesystem::path &dir);

 protected:
  // Resolves the special-token ids from the vocabulary.
  void ResolveSpecials();

  std::unordered_map<std::string, int> vocab_;
  int cls_id_ = -1, sep_id_ = -1, pad_id_ = -1, unk_id_ = -1, mask_id_ = -1;
};

class WordPieceTokenizer : public SubwordTokenizer {
 public:
  WordPieceTokenizer(std::unordered_map<std::string, int> vocab, bool lowercase,
                     bool strip_accents, std::string unk_token = "[UNK]",
                     std::string prefix = "##", size_t max_chars = 100);
  std::vector<int> Encode(const std::string &word) const override;

 private:
  bool lowercase_;
  bool strip_accents_;
  std::string unk_token_;
  std::string prefix_;
  size_t max_chars_;
};

class UnigramTokenizer : public SubwordTokenizer {
 public:
  UnigramTokenizer(std::vector<std::pair<std::string, double>> pieces, int unk_id,
                   std::string replacement = "\xE2\x96\x81");
  std::vector<int> Encode(const std::string &word) const override;

 private:
  std::vector<double> scores_;
  double unk_score_;
  size_t max_piece_chars_ = 1;
  std::string replacement_;
};

class ByteBpeTokenizer : public SubwordTokenizer {
 public:
  ByteBpeTokenizer(std::unordered_map<std::string, int> vocab,
                   const std::vector<std::pair<std::string, std::string>> &merges,
                   std::string unk_token = "");
  std::vector<int> Encode(const std::string &word) const override;

 private:
  std::vector<int> EncodeChunk(const std::string &chunk) const;

  std::unordered_map<std::string, int> ranks_;  // "left right" -> rank
  std::string unk_token_;
};

}  // namespace legalseq

#endif  // LEGALSEQ_ENCODER_SUBWORD_H_
