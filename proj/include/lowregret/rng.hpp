// Copyright 2026 The lowregret Authors
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

#ifndef LOWREGRET_RNG_HPP_
#define LOWREGRET_RNG_HPP_

#include <cstdint>
#include <span>

namespace lowregret {

// Deterministic 64-bit PRNG used for every random choice in the library.
//
// The generator is SplitMix64 (Steele, Lea & Flood, "Fast Splittable
// Pseudorandom Number Generators", OOPSLA 2014): output i of a stream with
// seed s is mix64(s + (i+1) * kGolden), i.e. a counter-based generator with
// a fixed published finalizer. Integer-only arithmetic makes the sequence
// bit-identical across platforms, and `stream` derives statistically
// independent substreams (one per trial / sample) from a root seed, so
// parallel runs reproduce serial runs exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Substream `index` of root seed `seed`. Double-mixing decorrelates the
  // substream seeds from each other and from the root sequence.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(mix64(seed) ^ mix64((index + 1) * kGolden)));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Categorical draw from a probability vector (cumulative-sum inversion).
  // Falls back to the last positive entry when rounding leaves u unserved.
  int categorical(std::span<const double> probs) {
    const double u = next_unit();
    double cum = 0.0;
    int last_positive = 0;
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
      if (probs[i] > 0.0) last_positive = i;
      cum += probs[i];
      if (u < cum) return i;
    }
    return last_positive;
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace lowregret

#endif  // LOWREGRET_RNG_HPP_
