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

#include "legalseq/base/tensor_archive.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "legalseq/base/errors.h"

namespace legalseq {
namespace {

using json = nlohmann::json;

double HalfToDouble(uint16_t h) {
  const uint32_t sign = (h >> 15) & 1;
  const uint32_t exp = (h >> 10) & 0x1F;
  const uint32_t mant = h & 0x3FF;
  double v;
  if (exp == 0) {
    v = std::ldexp(static_cast<double>(mant), -24);
  } else if (exp == 31) {
    v = mant == 0 ? INFINITY : NAN;
  } else {
    v = std::ldexp(static_cast<double>(mant | 0x400), static_cast<int>(exp) - 25);
  }
  return sign ? -v : v;
}

double BFloatToDouble(uint16_t b) {
  uint32_t bits = static_cast<uint32_t>(b) << 16;
  float f;
  std::memcpy(&f, &bits, sizeof(f));
  return f;
}

}  // namespace

TensorArchive TensorArchive::Read(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tensor archive " + path.string());
  uint64_t header_len = 0;
  unsigned char len_bytes[8];
  if (!in.read(reinterpret_cast<char *>(len_bytes), 8)) {
    throw ParseError(path.string() + ": truncated archive header", 0);
  }
  for (int i = 7; i >= 0; --i) header_len = (header_len << 8) | len_bytes[i];
  std::string header(header_len, '\0');
  if (header_len > (1ULL << 30) || !in.read(header.data(), header_len)) {
    throw ParseError(path.string() + ": truncated archive header", 8);
  }
  json meta;
  try {
    meta = json::parse(header);
  } catch (const json::parse_error &e) {
    throw ParseError(path.string() + ": bad archive header: " + e.what(),
                     8 + e.byte);
  }
  std::vector<char> data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

  TensorArchive archive;
  for (auto it = meta.begin(); it != meta.end(); ++it) {
    if (it.key() == "__metadata__") {
      for (auto m = it->begin(); m != it->end(); ++m) {
        archive.metadata_[m.key()] = m->get<std::string>();
      }
      continue;
    }
    const std::string dtype = (*it)["dtype"].get<std::string>();
    const auto shape = (*it)["shape"].get<std::vector<int64_t>>();
    const auto offsets = (*it)["data_offsets"].get<std::vector<uint64_t>>();
    if (offsets.size() != 2 || offsets[1] > data.size() ||
        offsets[0] > offsets[1]) {
      throw ParseError(path.string() + ": tensor '" + it.key() +
                           "' has out-of-range offsets",
                       8);
    }
    int64_t count = 1;
    for (int64_t d : shape) count *= d;
    int64_t rows = 1, cols = count;
    if (shape.size() == 2) {
      rows = shape[0];
      cols = shape[1];
    } else if (shape.size() > 2) {
      cols = shape.back();
      rows = count / std::max<int64_t>(cols, 1);
    }
    const char *src = data.data() + offsets[0];
    const size_t nbytes = offsets[1] - offsets[0];
    size_t width;
    if (dtype == "F64") {
      width = 8;
    } else if (dtype == "F32") {
      width = 4;
    } else if (dtype == "F16" || dtype == "BF16") {
      width = 2;
    } else if (dtype == "I64") {
      width = 8;
    } else {
      throw ParseError(path.string() + ": unsupported dtype " + dtype, 8);
    }
    if (nbytes != static_cast<size_t>(count) * width) {
      throw ParseError(path.string() + ": tensor '" + it.key() +
                           "' size does not match its shape",
                       8);
    }
    Eigen::MatrixXd value(rows, cols);
    for (int64_t i = 0; i < count; ++i) {
      double v;
      const char *p = src + i * width;
      if (dtype == "F64") {
        std::memcpy(&v, p, 8);
      } else if (dtype == "F32") {
        float f;
        std::memcpy(&f, p, 4);
        v = f;
      } else if (dtype == "I64") {
        int64_t n;
        std::memcpy(&n, p, 8);
        v = static_cast<double>(n);
      } else {
        uint16_t h;
        std::memcpy(&h, p, 2);
        v = dtype == "F16" ? HalfToDouble(h) : BFloatToDouble(h);
      }
      value(i / cols, i % cols) = v;
    }
    archive.tensors_[it.key()] = Entry{shape, std::move(value)};
  }
  return archive;
}

void TensorArchive::Write(const std::filesystem::path &path) const {
  json header = json::object();
  uint64_t offset = 0;
  for (const auto &[name, entry] : tensors_) {
    const uint64_t bytes = static_cast<uint64_t>(entry.value.size()) * 8;
    header[name] = {{"dtype", "F64"},
                    {"shape", entry.shape},
                    {"data_offsets", {offset, offset + bytes}}};
    offset += bytes;
  }
  if (!metadata_.empty()) header["__metadata__"] = metadata_;
  std::string text = header.dump();
  // Pad the header so the data section is 8-byte aligned.
  while ((text.size() + 8) % 8 != 0) text.push_back(' ');

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write tensor archive " + path.string());
  const uint64_t len = text.size();
  unsigned char len_bytes[8];
  for (int i = 0; i < 8; ++i) len_bytes[i] = (len >> (8 * i)) & 0xFF;
  out.write(reinterpret_cast<const char *>(len_bytes), 8);
  out.write(text.data(), text.size());
  for (const auto &[name, entry] : tensors_) {
    const auto &m = entry.value;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double v = m(r, c);
        out.write(reinterpret_cast<const char *>(&v), 8);
      }
    }
  }
  out.flush();
  if (!out) throw IoError("failed writing tensor archive " + path.string());
}

void TensorArchive::Put(const std::string &name, const Eigen::MatrixXd &value) {
  tensors_[name] = Entry{{value.rows(), value.cols()}, value};
}

const Eigen::MatrixXd &TensorArchive::Get(const std::string &name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) {
    throw ConfigError("tensor '" + name + "' not found in archive");
  }
  return it->second.value;
}

}  // namespace legalseq
