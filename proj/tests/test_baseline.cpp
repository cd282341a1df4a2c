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

#include <map>

#include <gtest/gtest.h>

#include "stagegen/baseline.hpp"
#include "stagegen/errors.hpp"

namespace stagegen::baseline {
namespace {

TEST(Baseline, PureIgnoresSizeAndSeed) {
  Seed s = seed_of_u64(3);
  const auto before = s.state();
  EXPECT_EQ(run(pure<std::int64_t>(42), 9, s), 42);
  EXPECT_EQ(s.state(), before);
}

TEST(Baseline, IntRangeDrawsFromSeed) {
  Seed a = seed_of_u64(11);
  Seed b = seed_of_u64(11);
  EXPECT_EQ(run(int_range(0, 100), 5, a), b.int_in_range(0, 100));
  EXPECT_TRUE(a.same_state(b));
}

TEST(Baseline, BindSequencesLeftToRight) {
  auto g = bind(int_range(0, 1000), [](std::int64_t x) {
    return bind(int_range(0, 1000), [x](std::int64_t y) { return pure(std::pair{x, y}); });
  });
  Seed a = seed_of_u64(5);
  Seed b = seed_of_u64(5);
  const auto [x, y] = run(g, 0, a);
  EXPECT_EQ(x, b.int_in_range(0, 1000));
  EXPECT_EQ(y, b.int_in_range(0, 1000));
}

TEST(Baseline, CountBindsCountsEachBindCall) {
  auto g = bind(boolean(), [](bool b) { return bind(size(), [b](std::int64_t n) { return pure(n + b); }); });
  Seed s = seed_of_u64(0);
  CountBinds counter;
  run(g, 3, s);
  run(g, 3, s);
  EXPECT_EQ(counter.count(), 4u);
}

TEST(Baseline, WithSizeOverridesAmbientSize) {
  Seed s = seed_of_u64(0);
  EXPECT_EQ(run(with_size(7, size()), 100, s), 7);
  EXPECT_THROW(with_size(-1, size()), ContractError);
}

TEST(Baseline, RunRejectsNegativeSize) {
  Seed s = seed_of_u64(0);
  EXPECT_THROW(run(size(), -1, s), ContractError);
}

TEST(Baseline, WeightedUnionFollowsWeights) {
  auto g = weighted_union<std::int64_t>({{3, pure<std::int64_t>(0)}, {1, pure<std::int64_t>(1)}});
  Seed s = seed_of_u64(1);
  std::map<std::int64_t, int> hits;
  for (int i = 0; i < 40000; ++i) ++hits[run(g, 0, s)];
  EXPECT_NEAR(hits[0] / 40000.0, 0.75, 0.015);
}

TEST(Baseline, WeightedUnionSkipsZeroWeights) {
  auto g = weighted_union<std::int64_t>(
      {{0, pure<std::int64_t>(0)}, {2, pure<std::int64_t>(1)}, {0, pure<std::int64_t>(2)}});
  Seed s = seed_of_u64(1);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(run(g, 0, s), 1);
}

TEST(Baseline, WeightedUnionErrors) {
  EXPECT_THROW(weighted_union<std::int64_t>({}), ContractError);
  Seed s = seed_of_u64(1);
  auto zero = weighted_union<std::int64_t>({{0, pure<std::int64_t>(0)}});
  EXPECT_THROW(run(zero, 0, s), GenerationError);
  auto negative = weighted_union<std::int64_t>({{-1, pure<std::int64_t>(0)}, {2, pure<std::int64_t>(1)}});
  EXPECT_THROW(run(negative, 0, s), ContractError);
}

// Length-n list of coin flips, counted by recursion on the size.
Gen<std::int64_t> coin_count() {
  return fixed_point<std::int64_t>([](Gen<std::int64_t> self) {
    return bind(size(), [self](std::int64_t n) {
      if (n == 0) return pure<std::int64_t>(0);
      return bind(boolean(), [self, n](bool b) {
        return bind(with_size(n - 1, self), [b](std::int64_t rest) { return pure(rest + (b ? 1 : 0)); });
      });
    });
  });
}

TEST(Baseline, FixedPointRecursesOnSize) {
  Seed s = seed_of_u64(2);
  s.set_counting(true);
  const auto heads = run(coin_count(), 50, s);
  EXPECT_GE(heads, 0);
  EXPECT_LE(heads, 50);
  EXPECT_EQ(s.samples(), 50u);
}

TEST(Baseline, FixedPointParamThreadsParameter) {
  auto g = fixed_point_param<std::int64_t, std::int64_t>(
      [](Recur<std::int64_t, std::int64_t> self, std::int64_t depth) {
        if (depth == 0) return pure<std::int64_t>(0);
        return bind(self(depth - 1), [](std::int64_t x) { return pure(x + 1); });
      },
      6);
  Seed s = seed_of_u64(0);
  EXPECT_EQ(run(g, 0, s), 6);
}

TEST(Baseline, DeterministicForEqualSeeds) {
  Seed a = seed_of_u64(99);
  Seed b = seed_of_u64(99);
  EXPECT_EQ(run(coin_count(), 30, a), run(coin_count(), 30, b));
}

}  // namespace
}  // namespace stagegen::baseline
