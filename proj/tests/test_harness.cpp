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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stagegen/errors.hpp"
#include "stagegen/harness.hpp"
#include "stagegen/svg.hpp"
#include "stagegen/workloads.hpp"

namespace stagegen::harness {
namespace {

Outcome outcome(const std::string& task, Treatment t, std::uint64_t seed, bool found, std::uint64_t ns,
                std::uint64_t tried = 10) {
  return Outcome{task, "s", seed, t, found, ns, tried, 0};
}

TEST(Harness, GeoMeanIdentities) {
  EXPECT_DOUBLE_EQ(geo_mean({1, 1, 1, 1}), 1.0);
  EXPECT_NEAR(geo_mean({2, 8}), 4.0, 1e-12);
  std::vector<double> xs = {0.5, 3, 7, 1.25, 9};
  const double g = geo_mean(xs);
  std::mt19937 rng(1);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(xs.begin(), xs.end(), rng);
    EXPECT_NEAR(geo_mean(xs), g, 1e-12);
  }
  EXPECT_THROW(geo_mean({}), ContractError);
  EXPECT_THROW(geo_mean({1, 0}), ContractError);
}

TEST(Harness, SpeedupAgainstItselfIsOne) {
  const Outcome o = outcome("t", kBaselineFast, 0, true, 12345);
  EXPECT_EQ(speedup(o, o), 1.0);
  EXPECT_FALSE(speedup(o, outcome("t", kStagedFast, 0, false, 1)).has_value());
  EXPECT_DOUBLE_EQ(*speedup(o, outcome("t", kStagedFast, 0, true, 12345 / 5.0)), 12345.0 / 2469);
}

TEST(Harness, FilterExcludesTasksEveryTreatmentFailed) {
  std::vector<Outcome> os;
  for (const auto& t : all_treatments()) os.push_back(outcome("dead", t, 0, false, 10'000'000'000));
  const auto r = filter_tasks(os);
  EXPECT_TRUE(r.retained.empty());
  EXPECT_EQ(r.excluded.at({"dead", "s"}), "all treatments failed");
}

TEST(Harness, FilterExcludesTasksTheBaselineSolvesQuickly) {
  std::vector<Outcome> os;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    for (const auto& t : all_treatments()) os.push_back(outcome("easy", t, seed, true, 1'000'000));
    for (const auto& t : all_treatments()) os.push_back(outcome("hard", t, seed, true, 9'000'000));
  }
  const auto r = filter_tasks(os);
  ASSERT_EQ(r.retained.size(), 1u);
  EXPECT_EQ(r.retained[0].task, "hard");
  EXPECT_EQ(r.excluded.count({"easy", "s"}), 1u);
  // The threshold is adjustable.
  EXPECT_EQ(filter_tasks(os, 500'000).retained.size(), 2u);
}

TEST(Harness, FilterKeepsTasksOnlyOneTreatmentSolved) {
  std::vector<Outcome> os = {outcome("lone", kBaselineFast, 0, false, 10),
                             outcome("lone", kStagedFast, 0, true, 10),
                             outcome("lone", kBaselineSlow, 0, false, 10)};
  const auto r = filter_tasks(os);
  ASSERT_EQ(r.retained.size(), 1u);
}

TEST(Harness, TaskSpeedupsRecordWhyNoneExists) {
  std::vector<Outcome> os = {outcome("a", kBaselineFast, 0, true, 10'000'000),
                             outcome("a", kStagedFast, 0, true, 2'000'000),
                             outcome("a", kBaselineFast, 1, true, 10'000'000),
                             outcome("a", kStagedFast, 1, true, 5'000'000),
                             outcome("b", kBaselineFast, 0, true, 10'000'000),
                             outcome("b", kStagedFast, 0, false, 10'000'000)};
  const auto rows = task_speedups(os, {{"a", "s"}, {"b", "s"}}, kBaselineFast, kStagedFast);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(*rows[0].speedup, std::sqrt(5.0 * 2.0), 1e-9);
  EXPECT_FALSE(rows[1].speedup.has_value());
  EXPECT_FALSE(rows[1].reason.empty());
}

TEST(Harness, PointwiseViolationsAreReported) {
  std::vector<Outcome> os = {outcome("a", kBaselineFast, 0, true, 5, 10), outcome("a", kStagedFast, 0, true, 2, 10),
                             outcome("a", kStagedSlow, 0, false, 2, 3)};
  EXPECT_TRUE(pointwise_violations(os).empty());
  os.push_back(outcome("a", kBaselineSlow, 0, true, 5, 11));
  EXPECT_EQ(pointwise_violations(os).size(), 1u);
}

TEST(Harness, RankCorrelation) {
  EXPECT_NEAR(rank_correlation({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0, 1e-12);
  EXPECT_NEAR(rank_correlation({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0, 1e-12);
  EXPECT_NEAR(rank_correlation({1, 2, 3, 4, 5}, {5, 6, 7, 8, 7}), 0.8207826816681233, 1e-9);
  EXPECT_THROW(rank_correlation({1}, {1}), ContractError);
}

TEST(Harness, EmptyDiffPasses) {
  const auto r = diff_test(*workloads::find("bool_list"), {10, 100}, 0);
  EXPECT_EQ(r.checks, 0u);
  EXPECT_TRUE(r.divergences.empty());
}

TEST(Harness, DiffFindsNoDivergenceOnSmallRun) {
  for (const auto& w : workloads::registry()) {
    const auto r = diff_test(w, {0, 10}, 50);
    EXPECT_TRUE(r.divergences.empty()) << w.id;
  }
}

TEST(Harness, BoolListBindCountIsTwoPerElement) {
  const GenPair g = make_pair(*workloads::find("bool_list"));
  const Counts c = instrumented_counts(g, kBaselineFast, 100, 50, 0);
  EXPECT_EQ(c.binds_per_value, 201.0);
  EXPECT_EQ(c.samples_per_value, 100.0);
  const Counts staged = instrumented_counts(g, kStagedFast, 100, 50, 0);
  EXPECT_EQ(staged.binds_per_value, 0.0);
  EXPECT_EQ(staged.samples_per_value, 100.0);
}

TEST(Harness, SampleCountsMatchAcrossBackends) {
  for (const auto& w : workloads::registry()) {
    const GenPair g = make_pair(w);
    EXPECT_EQ(instrumented_counts(g, kBaselineFast, 100, 30, 1).samples_per_value,
              instrumented_counts(g, kStagedFast, 100, 30, 1).samples_per_value)
        << w.id;
  }
}

TEST(Harness, InstrumentationDoesNotChangeValues) {
  const GenPair g = make_pair(*workloads::find("bst_single_pass"));
  for (std::uint64_t k = 0; k < 50; ++k) {
    Seed plain = seed_of_u64(k);
    Seed counted = seed_of_u64(k);
    counted.set_counting(true);
    baseline::CountBinds counter;
    EXPECT_EQ(g.run(Backend::kBaseline, 40, plain), g.run(Backend::kBaseline, 40, counted));
  }
}

TEST(Harness, BenchRowsArePositive) {
  BenchOptions opt;
  opt.sizes = {10};
  opt.min_duration_s = 0.02;
  opt.rounds = 2;
  opt.instrument = true;
  opt.instrument_values = 10;
  const auto rows = bench(*workloads::find("return"), {all_treatments().begin(), all_treatments().end()}, opt);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_GT(r.ns_per_value, 0);
    EXPECT_GT(r.values, 0u);
    EXPECT_TRUE(r.binds_per_value.has_value());
  }
  const std::string csv = bench_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "workload,treatment,size,ns_per_value,binds,samples,flagged");
}

TEST(Harness, RunTaskIsReproducibleAcrossTreatments) {
  const TaskDef* t = find_task("bst:insert_drop:InsertPost");
  ASSERT_NE(t, nullptr);
  EtnaOptions opt;
  opt.max_values = 100000;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    std::vector<Outcome> os;
    for (const auto& tr : all_treatments()) os.push_back(run_task(*t, "bst_insert", tr, seed, opt));
    for (const auto& o : os) {
      EXPECT_TRUE(o.found);
      EXPECT_EQ(o.values_tried, os.front().values_tried);
      EXPECT_GE(o.values_tried, 1u);
    }
  }
}

TEST(Harness, RunTaskStopsAtTheValueCap) {
  EtnaOptions opt;
  opt.max_values = 7;
  const Outcome o = run_task(*find_task("bst:delete_wrong_side:DeletePost"), "bst_derived", kBaselineFast, 0, opt);
  EXPECT_LE(o.values_tried, 7u);
}

TEST(Harness, TaskRegistryIsConsistent) {
  std::set<std::string> paired_mutants;
  for (const auto& t : tasks()) {
    EXPECT_EQ(find_task(t.task.id()), &t);
    EXPECT_FALSE(strategies_for(t.task.family).empty());
    if (t.paired) EXPECT_TRUE(paired_mutants.insert(t.task.mutant).second) << t.task.mutant;
  }
  EXPECT_EQ(paired_mutants.size(), 14u);
  EXPECT_EQ(find_task("bst:nope:InsertValid"), nullptr);
}

TEST(Harness, TreatmentNames) {
  EXPECT_EQ(to_string(kStagedSlow), "staged-slow");
  EXPECT_EQ(treatment_from_string("baseline-fast"), kBaselineFast);
  EXPECT_FALSE(treatment_from_string("other").has_value());
}

TEST(Harness, CsvColumnsAreStable) {
  const std::string etna = etna_csv({outcome("a", kBaselineFast, 2, true, 99, 4)});
  EXPECT_EQ(etna, "task,strategy,seed,treatment,found,ns,values_tried\na,s,2,baseline-fast,1,99,4\n");
}

TEST(Harness, LargeStackPropagatesExceptions) {
  EXPECT_THROW(with_large_stack([] { throw GenerationError("boom"); }), GenerationError);
  int ran = 0;
  with_large_stack([&] { ran = 1; });
  EXPECT_EQ(ran, 1);
}

TEST(Svg, ChartsAreWellFormed) {
  const std::string line = svg::line_chart("t", "x", "y", {{"a", {{10, 5}, {100, 50}}}});
  EXPECT_EQ(line.rfind("<svg", 0), 0u);
  EXPECT_NE(line.find("polyline"), std::string::npos);
  const std::string bars = svg::bar_chart("t", "y", {"g<1>"}, {{"b", {2.0}}});
  EXPECT_NE(bars.find("g&lt;1&gt;"), std::string::npos);
  EXPECT_NE(svg::scatter("t", "x", "y", {{"p", 1, 2}}).find("circle"), std::string::npos);
}

}  // namespace
}  // namespace stagegen::harness
