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

#ifndef LEGALSEQ_BASE_TENSOR_ARCHIVE_H_
#define LEGALSEQ_BASE_TENSOR_ARCHIVE_H_

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace legalseq {

// Named-tensor container in the safetensors layout: an 8-byte little-endian
// header length, a JSON header describing every tensor, then raw row-major
// data. Used both for reading pretrained encoder weights and for writing
// model checkpoints.
//
// Tensors of rank 1 load as 1 x n matrices and rank-2 tensors keep their
// (rows, cols) shape. Reading accepts F64, F32, F16 and BF16; writing always
// emits F64 so checkpoints round-trip bit-exactly.
class TensorArchive {
 public:
  struct Entry {
    std::vector<int64_t> shape;
    Eigen::MatrixXd value;
  };

  static TensorArchive Read(const std::filesystem::path &path);
  void Write(const std::filesystem::path &path) const;

  void Put(const std::string &name, const Eigen::MatrixXd &value);
  bool Has(const std::string &name) const { return tensors_.count(name) > 0; }
  const Eigen::MatrixXd &Get(const std::string &name) const;
  const std::map<std::string, Entry> &tensors() const { return tensors_; }

  std::map<std::string, std::string> &metadata() { return metadata_; }
  const std::map<std::string, std::string> &metadata() const {
    return metadata_;
  }

 private:
  std::map<std::string, Entry> tensors_;
  std::map<std::string, std::string> metadata_;
};

}  // namespace legalseq

#endif  // LEGALSEQ_BASE_TENSOR_ARCHIVE_H_
