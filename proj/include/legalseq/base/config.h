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

#ifndef LEGALSEQ_BASE_CONFIG_H_
#define LEGALSEQ_BASE_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace legalseq {

// Flat key-value configuration.
//
// File syntax, one entry per line:
//
//   # comment
//   key = value
//
// Keys are dotted identifiers (e.g. "train.peak_lr"). Values are kept as
// strings and converted on access; conversion failures raise ConfigError.
// Later assignments override earlier ones, which is how presets, config
// files and command-line overrides are layered.
class Config {
 public:
  Config() = default;

  static Config Parse(const std::string &text, const std::string &origin);
  static Config Load(const std::filesystem::path &path);

  void Set(const std::string &key, const std::string &value);
  void Merge(const Config &other);
  bool Has(const std::string &key) const;
  void Erase(const std::string &key);

  std::string GetString(const std::string &key) const;
  std::string GetString(const std::string &key, const std::string &def) const;
  long GetInt(const std::string &key) const;
  long GetInt(const std::string &key, long def) const;
  double GetDouble(const std::string &key) const;
  double GetDouble(const std::string &key, double def) const;
  bool GetBool(const std::string &key) const;
  bool GetBool(const std::string &key, bool def) const;
  std::optional<double> GetOptionalDouble(const std::string &key) const;

  // Keys that were set but never read. Used to reject typos.
  std::vector<std::string> UnreadKeys() const;

  // Canonical serialization: sorted "key = value" lines.
  std::string ToString() const;

  const std::map<std::string, std::string> &entries() const { return entries_; }

 private:
  const std::string *Find(const std::string &key) const;

  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> read_;
};

// Shortest text that parses back to exactly `v`.
std::string FormatDouble(double v);

}  // namespace legalseq

#endif  // LEGALSEQ_BASE_CONFIG_H_
