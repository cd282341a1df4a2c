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

#include <gtest/gtest.h>

#include "stagegen/baseline.hpp"
#include "stagegen/errors.hpp"
#include "stagegen/harness.hpp"
#include "stagegen/staged.hpp"
#include "stagegen/workloads.hpp"

namespace stagegen::staged {
namespace {

using ir::CodeVal;
using ir::lit;

Gen<Value> two_ints() {
  return bind(int_range(lit(0), lit(100)), [](CodeVal x) {
    return bind(int_range(lit(0), lit(100)),
                [x](CodeVal y) { return pure<Value>(CodeVal::tuple({x, y})); });
  });
}

TEST(Staged, PairOfIntsEmitsTwoSampleLetsThenATuple) {
  const auto g = compile(two_ints());
  EXPECT_EQ(g.ir_text(),
            "def main0(size=v0, seed=v1):\n"
            "  let v2 = sample(0, 100)\n"
            "  let v3 = sample(0, 100)\n"
            "  yield (v2, v3)\n"
            "entry main0\n");
  const auto st = ir::stats(g.program());
  EXPECT_EQ(st.samples, 2u);
  EXPECT_EQ(st.lets, 2u);
}

TEST(Staged, ReusedDrawIsNamedOnce) {
  const auto g = compile(workloads::int_pair_staged());
  EXPECT_EQ(ir::stats(g.program()).samples, 1u);
  Seed s = seed_of_u64(4);
  const Value v = g(0, s);
  EXPECT_EQ(v.field(0), v.field(1));
}

TEST(Staged, CompilingTwicePrintsIdentically) {
  for (const auto& w : workloads::registry()) {
    EXPECT_EQ(compile(w.make_staged()).ir_text(), compile(w.make_staged()).ir_text()) << w.id;
  }
}

TEST(Staged, EveryWorkloadProgramLints) {
  for (const auto& w : workloads::registry()) {
    const auto g = compile(w.make_staged());
    EXPECT_TRUE(ir::lint(g.program()).empty()) << w.id;
  }
}

TEST(Staged, ReturnRunsWithoutSampling) {
  const auto g = compile(pure<std::int64_t>(lit(0)));
  Seed s = seed_of_u64(1);
  s.set_counting(true);
  EXPECT_EQ(g(5, s), 0);
  EXPECT_EQ(s.samples(), 0u);
}

TEST(Staged, ConstantWeightsFoldAtStageOne) {
  const std::string text = compile(workloads::grades_staged()).ir_text();
  EXPECT_NE(text.find("sample(0, 9)"), std::string::npos);
  EXPECT_NE(text.find("choose"), std::string::npos);
}

TEST(Staged, FoldingDoesNotChangeSelection) {
  CompileOptions unfolded;
  unfolded.fold_constants = false;
  for (const char* id : {"grades", "bst_single_pass", "stlc_welltyped"}) {
    const auto* w = workloads::find(id);
    const auto a = compile(w->make_staged());
    const auto b = compile(w->make_staged(), unfolded);
    for (std::uint64_t k = 0; k < 200; ++k) {
      Seed s1 = seed_of_u64(k);
      Seed s2 = seed_of_u64(k);
      ASSERT_EQ(a(20, s1), b(20, s2)) << id << " seed " << k;
      ASSERT_TRUE(s1.same_state(s2));
    }
  }
}

TEST(Staged, SizeDrivenWeightsStayDynamic) {
  // Size 0 leaves only the first branch.
  const auto c = compile(Gen<std::int64_t>([](const CodeVal& size, const CodeVal& seed, Builder& b) {
    return weighted_union<std::int64_t>({{lit(1), pure<std::int64_t>(lit(0))},
                                         {size, pure<std::int64_t>(lit(1))}})(size, seed, b);
  }));
  EXPECT_NE(c.ir_text().find("total(1, v0)"), std::string::npos) << c.ir_text();
  Seed s = seed_of_u64(0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(c(0, s), 0);
}

TEST(Staged, ZeroTotalWeightFailsAtRunTime) {
  const auto c = compile(Gen<std::int64_t>([](const CodeVal& size, const CodeVal& seed, Builder& b) {
    return weighted_union<std::int64_t>({{size, pure<std::int64_t>(lit(0))}})(size, seed, b);
  }));
  Seed s = seed_of_u64(0);
  EXPECT_THROW(c(0, s), GenerationError);
  EXPECT_EQ(c(3, s), 0);
}

TEST(Staged, EmptyChoiceIsACompileError) {
  EXPECT_THROW(weighted_union<std::int64_t>({}), CompileError);
}

TEST(Staged, NegativeConstantSizeIsRejected) {
  EXPECT_THROW(compile(with_size(lit(-1), size())), ContractError);
}

TEST(Staged, EscapedHandleIsACompileError) {
  std::optional<Handle<std::int64_t>> leaked;
  const auto fix = fixed_point<std::int64_t>([&](Handle<std::int64_t> h) {
    leaked = h;
    return pure<std::int64_t>(lit(0));
  });
  compile(fix);
  EXPECT_THROW(compile(recurse(*leaked)), CompileError);
}

TEST(Staged, RecursionArityIsChecked) {
  const auto fix = fixed_point<std::int64_t>(
      [](Handle<std::int64_t> h) { return recurse(h, {lit(1)}); });
  EXPECT_THROW(compile(fix), CompileError);
}

Value sum_args(std::span<const Value> args) {
  std::int64_t total = 0;
  for (const auto& a : args) total += a.as_int();
  return Value::integer(total);
}

TEST(Staged, ExternArityAboveTheLimitIsRejected) {
  static const ir::ExternFn wide{"wide", 9, &sum_args};
  const auto g = Gen<Value>([](const CodeVal& size, const CodeVal&, Builder&) {
    std::vector<CodeVal> a(9, size);
    return CodeVal::call_extern(&wide, a);
  });
  EXPECT_THROW(compile(g), CompileError);
}

TEST(Staged, ExternCallsRun) {
  static const ir::ExternFn add3{"add3", 3, &sum_args};
  const auto g = compile(Gen<Value>([](const CodeVal& size, const CodeVal&, Builder&) {
    return CodeVal::call_extern(&add3, {size, size, lit(1)});
  }));
  Seed s = seed_of_u64(0);
  EXPECT_EQ(g(4, s).as_int(), 9);
}

TEST(Staged, RecursiveDefinitionIsEmittedOnce) {
  const auto g = compile(workloads::bst_single_pass_staged());
  EXPECT_EQ(g.program().defs.size(), 2u);
}

TEST(Staged, MatchesBaselineSampleCountsOnTrees) {
  const auto base = workloads::bst_single_pass_baseline();
  const auto staged = compile(workloads::bst_single_pass_staged());
  Seed a = seed_of_u64(0);
  Seed b = seed_of_u64(0);
  a.set_counting(true);
  b.set_counting(true);
  EXPECT_EQ(base(100, a), staged(100, b));
  EXPECT_EQ(a.samples(), b.samples());
  EXPECT_GT(a.samples(), 0u);
}

TEST(Staged, NaiveSpliceIsCaughtByTheDifferentialCheck) {
  CompileOptions naive;
  naive.let_insertion = false;
  naive.lint = false;
  const auto g = compile(workloads::int_pair_staged(), naive);
  EXPECT_EQ(ir::stats(g.program()).inlined_effects, 2u);
  const auto report = harness::diff_generators("int_pair", workloads::int_pair_baseline(), g, {10}, 10);
  EXPECT_FALSE(report.divergences.empty());
}

TEST(Staged, LinterRejectsNaiveSplice) {
  CompileOptions naive;
  naive.let_insertion = false;
  EXPECT_THROW(compile(workloads::int_pair_staged(), naive), CompileError);
}

}  // namespace
}  // namespace stagegen::staged
