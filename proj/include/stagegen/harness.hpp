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

// Measurement engine: differential testing of the two backends, generation
// benchmarks, and the time-to-failure protocol for bug-finding tasks.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stagegen/baseline.hpp"
#include "stagegen/bst.hpp"
#include "stagegen/splitmix.hpp"
#include "stagegen/staged.hpp"
#include "stagegen/value.hpp"
#include "stagegen/workloads.hpp"

namespace stagegen::harness {

enum class Backend : std::uint8_t { kBaseline, kStaged };

struct Treatment {
  Backend backend = Backend::kBaseline;
  PrngVariant prng = PrngVariant::kFast;

  friend bool operator==(const Treatment&, const Treatment&) = default;
};

// "baseline-fast", "baseline-slow", "staged-fast", "staged-slow".
std::string to_string(Treatment t);
std::string to_string(Backend b);
std::optional<Treatment> treatment_from_string(const std::string& s);
std::optional<Backend> backend_from_string(const std::string& s);
const std::array<Treatment, 4>& all_treatments();

inline constexpr Treatment kBaselineFast{Backend::kBaseline, PrngVariant::kFast};
inline constexpr Treatment kBaselineSlow{Backend::kBaseline, PrngVariant::kIndirectSlow};
inline constexpr Treatment kStagedFast{Backend::kStaged, PrngVariant::kFast};
inline constexpr Treatment kStagedSlow{Backend::kStaged, PrngVariant::kIndirectSlow};

// One generator in both backends, the staged one already compiled.
struct GenPair {
  baseline::Gen<Value> baseline;
  staged::CompiledGen<Value> staged;

  Value run(Backend b, std::int64_t size, Seed& seed) const {
    return b == Backend::kBaseline ? baseline(size, seed) : staged(size, seed);
  }
};

GenPair make_pair(const workloads::Workload& w, const staged::CompileOptions& options = {});

// Runs `fn` on a thread with a large stack (deep recursion at large sizes)
// and rethrows anything it throws.
void with_large_stack(const std::function<void()>& fn,
                      std::size_t stack_bytes = std::size_t{1} << 29);

// ---------------------------------------------------------------------------
// Differential testing

struct Divergence {
  std::string workload;
  std::int64_t size = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct DiffReport {
  std::uint64_t checks = 0;
  std::vector<Divergence> divergences;
  bool ok() const { return divergences.empty(); }
};

// For seeds 0..n_seeds-1 and every size: equal values, equal seed end
// states and equal sample counts. Errors count as results: both backends
// must raise the same error type and message.
DiffReport diff_generators(const std::string& name, const baseline::Gen<Value>& base,
                           const staged::CompiledGen<Value>& staged,
                           const std::vector<std::int64_t>& sizes, std::uint64_t n_seeds,
                           std::size_t max_reported = 20);
DiffReport diff_test(const workloads::Workload& w, const std::vector<std::int64_t>& sizes,
                     std::uint64_t n_seeds, const staged::CompileOptions& options = {});

// ---------------------------------------------------------------------------
// Benchmarks

struct BenchRow {
  std::string workload;
  Treatment treatment;
  std::int64_t size = 0;
  double ns_per_value = 0;
  // Filled by the instrumented pass, counted at BenchOptions::instrument_size.
  std::optional<double> binds_per_value;
  std::optional<double> samples_per_value;
  std::uint64_t values = 0;
  // Set when the measurement is below what the clock can resolve.
  bool flagged = false;
};

struct BenchOptions {
  std::vector<std::int64_t> sizes{10, 100, 1000, 10000};
  double min_duration_s = 1.0;  // per (treatment, size), split across rounds
  int rounds = 5;
  bool instrument = true;
  std::int64_t instrument_size = 100;
  std::uint64_t instrument_values = 200;
  std::uint64_t master_seed = 0;
};

// Treatments are interleaved round by round; each row reports the median of
// the per-round averages. Seeds are split from the master before each timed
// batch, outside the timed region.
std::vector<BenchRow> bench(const workloads::Workload& w, const std::vector<Treatment>& treatments,
                            const BenchOptions& options);

struct Counts {
  double binds_per_value = 0;
  double samples_per_value = 0;
};
Counts instrumented_counts(const GenPair& g, Treatment t, std::int64_t size,
                           std::uint64_t values, std::uint64_t master_seed = 0);

// Spearman rank correlation with average ranks for ties.
double rank_correlation(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Bug-finding tasks

struct Task {
  std::string family;    // "bst" or "stlc"
  std::string mutant;
  std::string property;
  std::string id() const { return family + ":" + mutant + ":" + property; }
};

// Inputs are a tuple; returns the property's verdict under the task's mutant.
using Checker = std::function<bst::Verdict(const Value& inputs)>;

struct TaskDef {
  Task task;
  std::string target;  // insert, delete, union, subst or step
  std::string description;
  std::size_t tree_inputs = 0;  // leading inputs drawn from the strategy
  std::size_t int_inputs = 0;   // trailing integers in [0, 100]
  // The property this mutant is registered against; other tasks for the
  // same mutant are secondary.
  bool paired = false;
  Checker check;
};

const std::vector<TaskDef>& tasks();
const TaskDef* find_task(const std::string& id);
std::vector<std::string> strategies_for(const std::string& family);
const std::string& canonical_strategy(const std::string& family);

struct Outcome {
  std::string task;
  std::string strategy;
  std::uint64_t seed_id = 0;
  Treatment treatment;
  bool found = false;
  std::uint64_t ns = 0;
  std::uint64_t values_tried = 0;
  std::uint64_t discards = 0;
};

struct EtnaOptions {
  double timeout_s = 10.0;
  std::int64_t max_size = 20;  // the i-th value is generated at size i % (max_size + 1)
  std::uint64_t max_values = 0;  // 0: unlimited
};

// Generator of task inputs for (strategy, task shape), in both backends.
const GenPair& input_generator(const std::string& strategy, std::size_t trees,
                               std::size_t ints);

Outcome run_task(const TaskDef& task, const std::string& strategy, Treatment t,
                 std::uint64_t seed_id, const EtnaOptions& options);

// baseline.ns / other.ns; nullopt when either did not find the bug.
std::optional<double> speedup(const Outcome& base, const Outcome& other);

// Throws ContractError on an empty input or a non-positive ratio.
double geo_mean(const std::vector<double>& ratios);

struct TaskKey {
  std::string task;
  std::string strategy;
  friend auto operator<=>(const TaskKey&, const TaskKey&) = default;
};

struct FilterResult {
  std::vector<TaskKey> retained;
  std::map<TaskKey, std::string> excluded;  // with the reason
};

// Groups outcomes by (task, strategy). A task is dropped when no treatment
// found the bug on any seed, or when the (Baseline, Fast) median time is
// under `threshold_ns`, unless exactly one treatment succeeded, in which
// case it is always kept.
FilterResult filter_tasks(const std::vector<Outcome>& outcomes,
                          std::uint64_t threshold_ns = 5'000'000);

struct SpeedupRow {
  TaskKey key;
  Treatment versus;
  std::optional<double> speedup;  // geo mean over seeds where both found
  std::string reason;             // set when speedup is undefined
};

// Per-task speedups of `versus` relative to `base`, over retained tasks.
std::vector<SpeedupRow> task_speedups(const std::vector<Outcome>& outcomes,
                                      const std::vector<TaskKey>& retained, Treatment base,
                                      Treatment versus);

// Pairs (task, strategy, seed) where two treatments both found the bug with
// different values_tried.
std::vector<std::string> pointwise_violations(const std::vector<Outcome>& outcomes);

// ---------------------------------------------------------------------------
// CSV

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string etna_csv(const std::vector<Outcome>& rows);
std::string speedup_csv(const std::vector<SpeedupRow>& rows);

}  // namespace stagegen::harness
