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

#include "stagegen/splitmix.hpp"

#include <chrono>
#include <limits>
#include <memory>

#include "stagegen/errors.hpp"

namespace stagegen {
namespace {

// One boxed 64-bit word, the analog of a heap-allocated int64 in a runtime
// without unboxed integers.
struct Box {
  std::uint64_t value;
};

using BoxPtr = std::unique_ptr<const Box>;

[[gnu::noinline]] BoxPtr box(std::uint64_t v) {
  return BoxPtr(new Box{v});
}

[[gnu::noinline]] std::uint64_t unbox(const BoxPtr& b) { return b->value; }

}  // namespace

std::string to_string(PrngVariant variant) {
  return variant == PrngVariant::kFast ? "fast" : "slow";
}

PrngVariant prng_variant_from_string(const std::string& name) {
  if (name == "fast") return PrngVariant::kFast;
  if (name == "slow" || name == "indirect") return PrngVariant::kIndirectSlow;
  throw ContractError("unknown prng variant '" + name + "'");
}

Seed::Seed(std::uint64_t state, std::uint64_t gamma, PrngVariant variant)
    : state_(state), gamma_(gamma), variant_(variant) {
  if ((gamma & 1) == 0) throw ContractError("seed gamma must be odd");
}

std::uint64_t Seed::advance_indirect() {
  BoxPtr s = box(unbox(box(state_)) + gamma_);
  state_ = unbox(s);
  return state_;
}

std::uint64_t Seed::next_u64_indirect() {
  // Nine boxes: the advanced state, then each shift, xor and multiply of
  // the finalizer.
  BoxPtr z = box(state_ + gamma_);
  state_ = unbox(z);
  BoxPtr t1 = box(unbox(z) >> 30);
  BoxPtr t2 = box(unbox(z) ^ unbox(t1));
  BoxPtr t3 = box(unbox(t2) * 0xbf58476d1ce4e5b9ULL);
  BoxPtr t4 = box(unbox(t3) >> 27);
  BoxPtr t5 = box(unbox(t3) ^ unbox(t4));
  BoxPtr t6 = box(unbox(t5) * 0x94d049bb133111ebULL);
  BoxPtr t7 = box(unbox(t6) >> 31);
  BoxPtr t8 = box(unbox(t6) ^ unbox(t7));
  return unbox(t8);
}

Seed Seed::split() {
  const std::uint64_t child_state = mix64(advance());
  const std::uint64_t child_gamma = mix_gamma(advance());
  Seed child(child_state, child_gamma, variant_);
  child.counting_ = counting_;
  return child;
}

std::int64_t Seed::int_in_range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw ContractError("int_in_range: lo (" + std::to_string(lo) +
                        ") > hi (" + std::to_string(hi) + ")");
  }
  const std::uint64_t range =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());
  const std::uint64_t span = range - 1;
  const std::uint64_t mask =
      span == 0 ? 0 : (~std::uint64_t{0} >> std::countl_zero(span));
  std::uint64_t draw;
  do {
    draw = next_u64() & mask;
  } while (draw >= range);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw);
}

Seed seed_of_u64(std::uint64_t value, PrngVariant variant) {
  return Seed(value, kGoldenGamma, variant);
}

double measure_next_u64_ns(PrngVariant variant, std::uint64_t calls) {
  Seed seed = seed_of_u64(0x5eed, variant);
  std::uint64_t sink = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < calls; ++i) sink ^= seed.next_u64();
  const auto stop = std::chrono::steady_clock::now();
  // Keep the loop observable.
  volatile std::uint64_t keep = sink;
  (void)keep;
  const double ns =
      std::chrono::duration<double, std::nano>(stop - start).count();
  return calls == 0 ? 0.0 : ns / static_cast<double>(calls);
}

}  // namespace stagegen
