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

#ifndef LEGALSEQ_BASE_ERRORS_H_
#define LEGALSEQ_BASE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace legalseq {

// Root of all errors raised by the toolkit. Each subclass maps to one of the
// failure classes surfaced by the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. byte_offset is the position reported by the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  size_t byte_offset() const { return byte_offset_; }

 private:
  size_t byte_offset_;
};

// Annotation offsets inconsistent with the document they belong to.
class IntegrityError : public Error {
 public:
  IntegrityError(const std::string &what, std::string doc_id)
      : Error(what), doc_id_(std::move(doc_id)) {}
  const std::string &doc_id() const { return doc_id_; }

 private:
  std::string doc_id_;
};

// Label strings that are not part of the active label set.
class LabelError : public Error {
 public:
  using Error::Error;
};

// Two gold entity spans overlap.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// A span boundary does not coincide with a token boundary (strict policy).
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Violated precondition on shapes, lengths or indices.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration, unknown preset or backend, mismatched checkpoint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// Training stopped early (non-finite loss, failed checkpoint write).
class TrainingAborted : public Error {
 public:
  using Error::Error;
};

}  // namespace legalseq

#endif  // LEGALSEQ_BASE_ERRORS_H_
