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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "stagegen/errors.hpp"
#include "stagegen/splitmix.hpp"

namespace stagegen {
namespace {

std::vector<std::string> read_lines(const std::string& name) {
  std::ifstream f(std::string(STAGEGEN_TEST_DATA) + "/" + name);
  std::vector<std::string> out;
  for (std::string line; std::getline(f, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::uint64_t hex(const std::string& s) { return std::stoull(s, nullptr, 16); }

TEST(SplitMix, MatchesReferenceOutputs) {
  const auto lines = read_lines("splitmix64_kat.txt");
  ASSERT_EQ(lines.size(), 10000u);
  for (std::uint64_t k = 0; k < 10; ++k) {
    Seed s = seed_of_u64(k);
    for (int i = 0; i < 1000; ++i) {
      ASSERT_EQ(s.next_u64(), hex(lines[k * 1000 + i])) << "seed " << k << " output " << i;
    }
  }
}

TEST(SplitMix, SplitMatchesReference) {
  const auto lines = read_lines("splitmix64_split_kat.txt");
  ASSERT_EQ(lines.size(), 10u);
  for (std::uint64_t k = 0; k < 10; ++k) {
    std::istringstream in(lines[k]);
    std::string state, gamma;
    in >> state >> gamma;
    Seed parent = seed_of_u64(k);
    Seed child = parent.split();
    EXPECT_EQ(child.state(), hex(state));
    EXPECT_EQ(child.gamma(), hex(gamma));
    for (std::string word; in >> word;) EXPECT_EQ(child.next_u64(), hex(word));
  }
}

TEST(SplitMix, IntInRangeMatchesReference) {
  const auto lines = read_lines("int_in_range_kat.txt");
  ASSERT_EQ(lines.size(), 60u);
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::uint64_t k;
    std::int64_t lo, hi;
    in >> k >> lo >> hi;
    Seed s = seed_of_u64(k);
    for (int i = 0; i < 8; ++i) {
      std::int64_t want;
      in >> want;
      EXPECT_EQ(s.int_in_range(lo, hi), want) << line;
    }
    std::string end;
    in >> end;
    EXPECT_EQ(s.state(), hex(end)) << line;
  }
}

TEST(SplitMix, SlowVariantIsBitIdentical) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    Seed fast = seed_of_u64(k, PrngVariant::kFast);
    Seed slow = seed_of_u64(k, PrngVariant::kIndirectSlow);
    for (int i = 0; i < 2000; ++i) {
      if (i % 97 == 0) {
        Seed a = fast.split();
        Seed b = slow.split();
        ASSERT_TRUE(a.same_state(b));
        EXPECT_EQ(b.variant(), PrngVariant::kIndirectSlow);
      }
      ASSERT_EQ(fast.next_u64(), slow.next_u64());
      ASSERT_EQ(fast.int_in_range(-3, 1000), slow.int_in_range(-3, 1000));
    }
  }
}

TEST(SplitMix, CountsSamplesOnlyWhenEnabled) {
  Seed s = seed_of_u64(7);
  s.next_u64();
  EXPECT_EQ(s.samples(), 0u);
  s.set_counting(true);
  s.next_u64();
  s.next_u64();
  EXPECT_EQ(s.samples(), 2u);
  Seed child = s.split();
  EXPECT_TRUE(child.counting());
  EXPECT_EQ(child.samples(), 0u);
}

TEST(SplitMix, RejectsEmptyRangeAndEvenGamma) {
  Seed s = seed_of_u64(0);
  EXPECT_THROW(s.int_in_range(5, 4), ContractError);
  EXPECT_THROW(Seed(1, 2), ContractError);
}

TEST(SplitMix, DegenerateRangeStillDraws) {
  Seed s = seed_of_u64(0);
  s.set_counting(true);
  EXPECT_EQ(s.int_in_range(5, 5), 5);
  EXPECT_EQ(s.samples(), 1u);
}

TEST(SplitMix, VariantNames) {
  EXPECT_EQ(to_string(PrngVariant::kFast), "fast");
  EXPECT_EQ(prng_variant_from_string("slow"), PrngVariant::kIndirectSlow);
}

}  // namespace
}  // namespace stagegen
