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

#ifndef LEGALSEQ_BASE_RNG_H_
#define LEGALSEQ_BASE_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

namespace legalseq {

// Seeded pseudo-random source. Distributions are implemented here rather
// than taken from <random> so that sequences are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : engine_(seed) {}

  void Seed(uint64_t seed) { engine_.seed(seed); }

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via Box-Muller.
  double Normal();

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = UniformInt(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// 64-bit FNV-1a.
uint64_t Fnv1a64(const void *data, size_t size, uint64_t seed = 0);

// SplitMix64 finalizer; a cheap bijective mixer.
uint64_t SplitMix64(uint64_t x);

}  // namespace legalseq

#endif  // LEGALSEQ_BASE_RNG_H_
