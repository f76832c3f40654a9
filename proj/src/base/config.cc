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

#include "legalseq/base/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "legalseq/base/errors.h"

namespace legalseq {
namespace {

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::Parse(const std::string &text, const std::string &origin) {
  Config config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": empty key");
    }
    config.Set(key, value);
  }
  return config;
}

Config Config::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path.string());
}

void Config::Set(const std::string &key, const std::string &value) {
  entries_[key] = value;
}

void Config::Merge(const Config &other) {
  for (const auto &[k, v] : other.entries_) entries_[k] = v;
}

bool Config::Has(const std::string &key) const {
  return entries_.count(key) > 0;
}

void Config::Erase(const std::string &key) { entries_.erase(key); }

const std::string *Config::Find(const std::string &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  read_.insert(key);
  return &it->second;
}

std::string Config::GetString(const std::string &key) const {
  const std::string *v = Find(key);
  if (v == nullptr) throw ConfigError("missing config key '" + key + "'");
  return *v;
}

std::string Config::GetString(const std::string &key,
                              const std::string &def) const {
  const std::string *v = Find(key);
  return v == nullptr ? def : *v;
}

long Config::GetInt(const std::string &key) const {
  const std::string s = GetString(key);
  long out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config key '" + key + "': not an integer: " + s);
  }
  return out;
}

long Config::GetInt(const std::string &key, long def) const {
  return Has(key) ? GetInt(key) : def;
}

double Config::GetDouble(const std::string &key) const {
  const std::string s = GetString(key);
  try {
    size_t used = 0;
    double out = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return out;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not a number: " + s);
  }
}

double Config::GetDouble(const std::string &key, double def) const {
  return Has(key) ? GetDouble(key) : def;
}

std::optional<double> Config::GetOptionalDouble(const std::string &key) const {
  if (!Has(key)) return std::nullopt;
  const std::string s = GetString(key);
  if (s == "none" || s.empty()) return std::nullopt;
  return GetDouble(key);
}

bool Config::GetBool(const std::string &key) const {
  const std::string s = GetString(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("config key '" + key + "': not a boolean: " + s);
}

bool Config::GetBool(const std::string &key, bool def) const {
  return Has(key) ? GetBool(key) : def;
}

std::vector<std::string> Config::UnreadKeys() const {
  std::vector<std::string> out;
  for (const auto &[k, v] : entries_) {
    if (read_.count(k) == 0) out.push_back(k);
  }
  return out;
}

std::string Config::ToString() const {
  std::string out;
  for (const auto &[k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw ContractError("cannot format number");
  return std::string(buf, ptr);
}

}  // namespace legalseq
