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

#include "legalseq/base/config.h"
#include "legalseq/base/errors.h"
#include "legalseq/base/rng.h"
#include "legalseq/base/tensor_archive.h"
#include "legalseq/base/utf8.h"

namespace legalseq {
namespace {

TEST_CASE("utf8 decode and encode round-trip") {
  const std::string s = "Ab \xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80";
  const std::u32string d = utf8::Decode(s);
  CHECK(d.size() == 8);
  CHECK(d[3] == U'é');
  CHECK(d[7] == U'\U0001F600');
  CHECK(utf8::Encode(d) == s);
  CHECK(utf8::Length(s) == 8);
}

TEST_CASE("utf8 invalid bytes become replacement characters") {
  const std::u32string d = utf8::Decode("a\xFF" "b");
  REQUIRE(d.size() == 3);
  CHECK(d[1] == U'�');
}

TEST_CASE("codepoint index slices by code point") {
  const std::string s = "caf\xC3\xA9 au lait";
  utf8::CodepointIndex index(s);
  CHECK(index.size() == 12);
  CHECK(index.Slice(s, 0, 4) == "caf\xC3\xA9");
  CHECK(index.Slice(s, 5, 7) == "au");
}

TEST_CASE("character classes") {
  CHECK(utf8::IsLetter(U'a'));
  CHECK(utf8::IsLetter(U'é'));
  CHECK_FALSE(utf8::IsLetter(U'3'));
  CHECK(utf8::IsDigit(U'3'));
  CHECK(utf8::IsPunct(U';'));
  CHECK(utf8::IsSpace(U'\n'));
  CHECK(utf8::ToLower(U'É') == U'é');
  CHECK(utf8::ToLower(U'Q') == U'q');
}

TEST_CASE("rng is reproducible and uniform ints stay in range") {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    CHECK(x == b.NextU64());
    differs = differs || (x != c.NextU64());
  }
  CHECK(differs);
  for (int i = 0; i < 1000; ++i) CHECK(a.UniformInt(5) < 5);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) sum += a.Normal();
  CHECK(std::abs(sum / 20000) < 0.05);
}

TEST_CASE("fnv1a matches the published test vector") {
  // FNV-1a 64 of "a" with the standard offset basis.
  CHECK(Fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("config parses, types values and tracks unread keys") {
  Config c = Config::Parse("# comment\nbatch_size = 16\nlr = 1e-4\n"
                           "name = hsln tiny  # trailing\nflag = true\n",
                           "test");
  CHECK(c.GetInt("batch_size") == 16);
  CHECK(c.GetDouble("lr") == doctest::Approx(1e-4));
  CHECK(c.GetString("name") == "hsln tiny");
  CHECK(c.UnreadKeys() == std::vector<std::string>{"flag"});
  CHECK(c.GetBool("flag"));
  CHECK(c.UnreadKeys().empty());
  CHECK_THROWS_AS(c.GetInt("name"), ConfigError);
  CHECK_THROWS_AS(c.GetString("missing"), ConfigError);
  CHECK_THROWS_AS(Config::Parse("no equals sign\n", "x"), ConfigError);
}

TEST_CASE("config merge overrides") {
  Config base = Config::Parse("a = 1\nb = 2\n", "base");
  base.Merge(Config::Parse("b = 3\n", "over"));
  CHECK(base.GetInt("a") == 1);
  CHECK(base.GetInt("b") == 3);
  Config none = Config::Parse("clip = none\n", "x");
  CHECK_FALSE(none.GetOptionalDouble("clip").has_value());
}

TEST_CASE("tensor archive round-trips matrices and metadata") {
  const auto path = std::filesystem::temp_directory_path() / "legalseq_archive_test.safetensors";
  TensorArchive out;
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, -6.25;
  out.Put("w", m);
  out.Put("v", Eigen::MatrixXd::Constant(1, 4, 0.1));
  out.metadata()["labels"] = "A,B";
  out.Write(path);
  TensorArchive in = TensorArchive::Read(path);
  CHECK(in.Get("w") == m);
  CHECK(in.Get("v") == Eigen::MatrixXd::Constant(1, 4, 0.1));
  CHECK(in.metadata().at("labels") == "A,B");
  CHECK_THROWS_AS(in.Get("missing"), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(TensorArchive::Read(path), IoError);
}

}  // namespace
}  // namespace legalseq
