// Copyright 2026 The stagegen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace stagegen {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

enum class PrngVariant : std::uint8_t {
  kFast,
  // Every intermediate of the output mix lives in its own heap cell and is
  // read back through a pointer: nine allocations per output word.
  kIndirectSlow,
};

std::string to_string(PrngVariant variant);
PrngVariant prng_variant_from_string(const std::string& name);

// SplitMix64 "variant 13" finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Gamma derivation for split children: forced odd, and rerolled when the
// bit pattern has too few transitions.
constexpr std::uint64_t mix_gamma(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

// Mutable splittable generator state. Single owner: a Seed may move between
// threads but must never be used from two at once.
class Seed {
 public:
  // gamma must be odd.
  Seed(std::uint64_t state, std::uint64_t gamma,
       PrngVariant variant = PrngVariant::kFast);

  std::uint64_t next_u64() {
    if (counting_) ++samples_;
    if (variant_ == PrngVariant::kFast) [[likely]] {
      state_ += gamma_;
      return mix64(state_);
    }
    return next_u64_indirect();
  }

  // Advances this seed twice and returns an independent child. The child
  // inherits the variant and the counting mode, with its own zeroed counter.
  Seed split();

  // Uniform over [lo, hi] by bitmask rejection. Throws ContractError when
  // lo > hi.
  std::int64_t int_in_range(std::int64_t lo, std::int64_t hi);

  std::uint64_t state() const { return state_; }
  std::uint64_t gamma() const { return gamma_; }
  PrngVariant variant() const { return variant_; }

  // Instrumentation: when on, samples() counts next_u64 calls.
  void set_counting(bool on) { counting_ = on; }
  bool counting() const { return counting_; }
  std::uint64_t samples() const { return samples_; }
  void reset_samples() { samples_ = 0; }

  // Same (state, gamma) history; variant and counters are not compared.
  bool same_state(const Seed& other) const {
    return state_ == other.state_ && gamma_ == other.gamma_;
  }

 private:
  std::uint64_t next_u64_indirect();
  std::uint64_t advance() {
    if (variant_ == PrngVariant::kFast) return state_ += gamma_;
    return advance_indirect();
  }
  std::uint64_t advance_indirect();

  std::uint64_t state_;
  std::uint64_t gamma_;
  std::uint64_t samples_ = 0;
  PrngVariant variant_;
  bool counting_ = false;
};

// Seed with state = value and the golden gamma.
Seed seed_of_u64(std::uint64_t value, PrngVariant variant = PrngVariant::kFast);

// Per-call nanoseconds of next_u64 for the given variant, averaged over
// `calls` invocations.
double measure_next_u64_ns(PrngVariant variant, std::uint64_t calls);

}  // namespace stagegen
