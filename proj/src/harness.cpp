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

#include "stagegen/harness.hpp"

#include <pthread.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <typeinfo>

#include "stagegen/errors.hpp"
#include "stagegen/stlc.hpp"

namespace stagegen::harness {

namespace bl = baseline;
namespace st = staged;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Treatments

std::string to_string(Backend b) { return b == Backend::kBaseline ? "baseline" : "staged"; }

std::string to_string(Treatment t) {
  return to_string(t.backend) + (t.prng == PrngVariant::kFast ? "-fast" : "-slow");
}

std::optional<Backend> backend_from_string(const std::string& s) {
  if (s == "baseline") return Backend::kBaseline;
  if (s == "staged") return Backend::kStaged;
  return std::nullopt;
}

std::optional<Treatment> treatment_from_string(const std::string& s) {
  for (const Treatment& t : all_treatments()) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

const std::array<Treatment, 4>& all_treatments() {
  static const std::array<Treatment, 4> all = {kBaselineFast, kBaselineSlow, kStagedFast,
                                               kStagedSlow};
  return all;
}

GenPair make_pair(const workloads::Workload& w, const st::CompileOptions& options) {
  return GenPair{w.make_baseline(), st::compile(w.make_staged(), options)};
}

void with_large_stack(const std::function<void()>& fn, std::size_t stack_bytes) {
  struct Context {
    const std::function<void()>* fn;
    std::exception_ptr error;
  } ctx{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_bytes);
  pthread_t thread;
  const int rc = pthread_create(
      &thread, &attr,
      [](void* p) -> void* {
        auto* c = static_cast<Context*>(p);
        try {
          (*c->fn)();
        } catch (...) {
          c->error = std::current_exception();
        }
        return nullptr;
      },
      &ctx);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (ctx.error) std::rethrow_exception(ctx.error);
}

// ---------------------------------------------------------------------------
// Differential testing

namespace {

struct RunResult {
  std::optional<Value> value;
  std::string error;
  std::uint64_t state = 0;
  std::uint64_t samples = 0;
};

template <class F>
RunResult observe(F&& f, std::int64_t size, std::uint64_t seed_value) {
  Seed seed = seed_of_u64(seed_value);
  seed.set_counting(true);
  RunResult r;
  try {
    r.value = f(size, seed);
  } catch (const std::exception& e) {
    r.error = std::string(typeid(e).name()) + ": " + e.what();
  }
  r.state = seed.state();
  r.samples = seed.samples();
  return r;
}

std::string clip(const std::string& s) {
  return s.size() <= 160 ? s : s.substr(0, 157) + "...";
}

}  // namespace

DiffReport diff_generators(const std::string& name, const bl::Gen<Value>& base,
                           const st::CompiledGen<Value>& staged,
                           const std::vector<std::int64_t>& sizes, std::uint64_t n_seeds,
                           std::size_t max_reported) {
  DiffReport report;
  std::uint64_t failures = 0;
  for (std::uint64_t seed = 0; seed < n_seeds; ++seed) {
    for (const std::int64_t size : sizes) {
      ++report.checks;
      const RunResult a = observe(base, size, seed);
      const RunResult b = observe(staged, size, seed);
      std::string detail;
      if (a.error != b.error) {
        detail = "errors differ: baseline [" + a.error + "] staged [" + b.error + "]";
      } else if (a.value.has_value() != b.value.has_value() ||
                 (a.value && !(*a.value == *b.value))) {
        detail = "values differ: baseline " + clip(a.value ? a.value->to_string() : "-") +
                 " staged " + clip(b.value ? b.value->to_string() : "-");
      } else if (a.state != b.state) {
        detail = "seed end states differ";
      } else if (a.samples != b.samples) {
        detail = "sample counts differ: baseline " + std::to_string(a.samples) + " staged " +
                 std::to_string(b.samples);
      }
      if (!detail.empty()) {
        ++failures;
        if (report.divergences.size() < max_reported) {
          report.divergences.push_back({name, size, seed, std::move(detail)});
        }
      }
    }
  }
  if (failures > report.divergences.size()) {
    report.divergences.push_back(
        {name, 0, 0,
         std::to_string(failures - report.divergences.size()) + " further divergences"});
  }
  return report;
}

DiffReport diff_test(const workloads::Workload& w, const std::vector<std::int64_t>& sizes,
                     std::uint64_t n_seeds, const st::CompileOptions& options) {
  const GenPair g = make_pair(w, options);
  DiffReport report;
  with_large_stack([&] { report = diff_generators(w.id, g.baseline, g.staged, sizes, n_seeds); });
  return report;
}

// ---------------------------------------------------------------------------
// Benchmarks

namespace {

double clock_resolution_ns() {
  static const double resolution = [] {
    double best = 1e9;
    for (int i = 0; i < 200; ++i) {
      const auto a = Clock::now();
      auto b = Clock::now();
      while (b == a) b = Clock::now();
      best = std::min(best, std::chrono::duration<double, std::nano>(b - a).count());
    }
    return best;
  }();
  return resolution;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

struct Round {
  double total_ns = 0;
  std::uint64_t values = 0;
};

// Generates values in doubling batches until `budget_ns` of timed work.
Round timed_round(const GenPair& g, Backend backend, std::int64_t size, Seed& master,
                  double budget_ns) {
  Round out;
  std::vector<Seed> seeds;
  std::size_t batch = 1;
  std::uint64_t sink = 0;
  while (out.total_ns < budget_ns) {
    seeds.clear();
    for (std::size_t i = 0; i < batch; ++i) seeds.push_back(master.split());
    const auto start = Clock::now();
    for (Seed& s : seeds) {
      const Value v = g.run(backend, size, s);
      sink += static_cast<std::uint64_t>(v.kind());
    }
    const double elapsed = std::chrono::duration<double, std::nano>(Clock::now() - start).count();
    out.total_ns += elapsed;
    out.values += batch;
    if (elapsed < 50'000 && batch < (std::size_t{1} << 20)) batch *= 2;
  }
  if (sink == ~std::uint64_t{0}) out.values += 0;  // keeps `sink` observable
  return out;
}

}  // namespace

Counts instrumented_counts(const GenPair& g, Treatment t, std::int64_t size,
                           std::uint64_t values, std::uint64_t master_seed) {
  Seed master = seed_of_u64(master_seed, t.prng);
  std::uint64_t binds = 0;
  std::uint64_t samples = 0;
  for (std::uint64_t i = 0; i < values; ++i) {
    Seed s = master.split();
    s.set_counting(true);
    bl::CountBinds counter;
    g.run(t.backend, size, s);
    binds += counter.count();
    samples += s.samples();
  }
  const double n = values == 0 ? 1.0 : static_cast<double>(values);
  return {static_cast<double>(binds) / n, static_cast<double>(samples) / n};
}

std::vector<BenchRow> bench(const workloads::Workload& w, const std::vector<Treatment>& treatments,
                            const BenchOptions& options) {
  std::vector<BenchRow> rows;
  with_large_stack([&] {
    const GenPair g = make_pair(w);
    std::vector<std::optional<Counts>> counts(treatments.size());
    if (options.instrument) {
      for (std::size_t ti = 0; ti < treatments.size(); ++ti) {
        counts[ti] = instrumented_counts(g, treatments[ti], options.instrument_size,
                                         options.instrument_values, options.master_seed);
      }
    }
    const int rounds = std::max(1, options.rounds);
    const double budget_ns = options.min_duration_s * 1e9 / rounds;
    for (const std::int64_t size : options.sizes) {
      std::vector<Seed> masters;
      for (const Treatment& t : treatments) masters.push_back(seed_of_u64(options.master_seed, t.prng));
      std::vector<std::vector<double>> per_round(treatments.size());
      std::vector<BenchRow> size_rows(treatments.size());
      for (int r = 0; r < rounds; ++r) {
        for (std::size_t ti = 0; ti < treatments.size(); ++ti) {
          const Round round = timed_round(g, treatments[ti].backend, size, masters[ti], budget_ns);
          per_round[ti].push_back(round.total_ns / static_cast<double>(round.values));
          size_rows[ti].values += round.values;
          if (round.total_ns < 1000 * clock_resolution_ns()) size_rows[ti].flagged = true;
        }
      }
      for (std::size_t ti = 0; ti < treatments.size(); ++ti) {
        BenchRow& row = size_rows[ti];
        row.workload = w.id;
        row.treatment = treatments[ti];
        row.size = size;
        row.ns_per_value = median(per_round[ti]);
        if (!(row.ns_per_value > 0)) row.flagged = true;
        if (counts[ti]) {
          row.binds_per_value = counts[ti]->binds_per_value;
          row.samples_per_value = counts[ti]->samples_per_value;
        }
        rows.push_back(std::move(row));
      }
    }
  });
  return rows;
}

double rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ContractError("rank_correlation: need two equally long series of length >= 2");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------
// Tasks

namespace {

TaskDef bst_task(bst::BstMutant m, bst::BstProperty p, const char* target, bool paired,
                 const char* description) {
  TaskDef def;
  def.task = {"bst", bst::to_string(m), bst::to_string(p)};
  def.target = target;
  def.description = description;
  def.tree_inputs = bst::tree_inputs(p);
  def.int_inputs = bst::int_inputs(p);
  def.paired = paired;
  def.check = [m, p](const Value& in) { return bst::check(p, in, m); };
  return def;
}

TaskDef stlc_task(stlc::StlcMutant m, stlc::StlcProperty p, const char* target, bool paired,
                  const char* description) {
  TaskDef def;
  def.task = {"stlc", stlc::to_string(m), stlc::to_string(p)};
  def.target = target;
  def.description = description;
  def.tree_inputs = 1;
  def.int_inputs = 0;
  def.paired = paired;
  def.check = [m, p](const Value& in) { return stlc::check(p, in.field(0), m); };
  return def;
}

}  // namespace

const std::vector<TaskDef>& tasks() {
  using bst::BstMutant;
  using bst::BstProperty;
  using stlc::StlcMutant;
  using stlc::StlcProperty;
  static const std::vector<TaskDef> all = {
      bst_task(BstMutant::kInsertLe, BstProperty::kInsertValid, "insert", true,
               "equal keys descend left, duplicating the key"),
      bst_task(BstMutant::kInsertLe, BstProperty::kInsertPost, "insert", false,
               "equal keys descend left, duplicating the key"),
      bst_task(BstMutant::kInsertDrop, BstProperty::kInsertPost, "insert", true,
               "insertion into a left subtree is dropped"),
      bst_task(BstMutant::kInsertNoUpdate, BstProperty::kInsertPost, "insert", true,
               "inserting an existing key keeps the old value"),
      bst_task(BstMutant::kDeleteDropSubtree, BstProperty::kDeletePost, "delete", true,
               "deleting a node discards its right subtree"),
      bst_task(BstMutant::kDeleteNoRecurse, BstProperty::kDeletePost, "delete", true,
               "delete does not descend into the left subtree"),
      bst_task(BstMutant::kDeleteWrongSide, BstProperty::kDeletePost, "delete", true,
               "delete descends right when the key is smaller"),
      bst_task(BstMutant::kUnionRightBias, BstProperty::kUnionPost, "union", true,
               "union keeps the right tree's value on shared keys"),
      bst_task(BstMutant::kUnionNoSplit, BstProperty::kUnionValid, "union", true,
               "union merges the whole right tree into the left subtree"),
      bst_task(BstMutant::kUnionNoSplit, BstProperty::kUnionPost, "union", false,
               "union merges the whole right tree into the left subtree"),
      bst_task(BstMutant::kUnionSwapSplit, BstProperty::kUnionValid, "union", true,
               "union sends the split halves to the wrong sides"),
      bst_task(BstMutant::kUnionSwapSplit, BstProperty::kUnionPost, "union", false,
               "union sends the split halves to the wrong sides"),
      stlc_task(StlcMutant::kSubstNoShift, StlcProperty::kSinglePreserve, "subst", true,
                "substitution under a binder does not shift the argument"),
      stlc_task(StlcMutant::kSubstNoShift, StlcProperty::kMultiPreserve, "subst", false,
                "substitution under a binder does not shift the argument"),
      stlc_task(StlcMutant::kSubstNoIndexInc, StlcProperty::kSinglePreserve, "subst", true,
                "substitution under a binder keeps the same target index"),
      stlc_task(StlcMutant::kSubstNoIndexInc, StlcProperty::kMultiPreserve, "subst", false,
                "substitution under a binder keeps the same target index"),
      stlc_task(StlcMutant::kShiftNoCutoff, StlcProperty::kSinglePreserve, "subst", true,
                "shifting also moves bound variables"),
      stlc_task(StlcMutant::kShiftNoCutoff, StlcProperty::kMultiPreserve, "subst", false,
                "shifting also moves bound variables"),
      stlc_task(StlcMutant::kStepNoShiftDown, StlcProperty::kSinglePreserve, "step", true,
                "beta reduction does not shift the result down"),
      stlc_task(StlcMutant::kStepNoShiftDown, StlcProperty::kMultiPreserve, "step", false,
                "beta reduction does not shift the result down"),
      stlc_task(StlcMutant::kStepNoArgShift, StlcProperty::kSinglePreserve, "step", true,
                "beta reduction does not shift the argument up"),
      stlc_task(StlcMutant::kStepNoArgShift, StlcProperty::kMultiPreserve, "step", false,
                "beta reduction does not shift the argument up"),
  };
  return all;
}

const TaskDef* find_task(const std::string& id) {
  for (const auto& t : tasks()) {
    if (t.task.id() == id) return &t;
  }
  return nullptr;
}

std::vector<std::string> strategies_for(const std::string& family) {
  if (family == "bst") return {"bst_insert", "bst_single_pass", "bst_derived"};
  if (family == "stlc") return {"stlc_welltyped", "stlc_derived"};
  return {};
}

const std::string& canonical_strategy(const std::string& family) {
  static const std::string bst_strategy = "bst_insert";
  static const std::string stlc_strategy = "stlc_welltyped";
  if (family == "stlc") return stlc_strategy;
  return bst_strategy;
}

namespace {

bl::Gen<Value> inputs_baseline(bl::Gen<Value> tree, std::size_t trees, std::size_t ints,
                               std::size_t i, std::vector<Value> acc) {
  if (i == trees + ints) return bl::pure(Value::node(kTupleTag, acc));
  bl::Gen<Value> next =
      i < trees ? tree
                : bl::Gen<Value>([](std::int64_t, Seed& s) { return Value::integer(s.int_in_range(0, 100)); });
  return bl::bind(next, [tree, trees, ints, i, acc = std::move(acc)](Value v) {
    std::vector<Value> more = acc;
    more.push_back(std::move(v));
    return inputs_baseline(tree, trees, ints, i + 1, std::move(more));
  });
}

st::Gen<Value> inputs_staged(st::Gen<Value> tree, std::size_t trees, std::size_t ints,
                             std::size_t i, std::vector<ir::CodeVal> acc) {
  if (i == trees + ints) return st::pure<Value>(ir::CodeVal::tuple(std::move(acc)));
  st::Gen<Value> next =
      i < trees ? tree
                : st::Gen<Value>([](const ir::CodeVal& size, const ir::CodeVal& seed, st::Builder& b) {
                    return st::int_range(ir::lit(0), ir::lit(100))(size, seed, b);
                  });
  return st::bind(next, [tree, trees, ints, i, acc = std::move(acc)](ir::CodeVal v) {
    std::vector<ir::CodeVal> more = acc;
    more.push_back(std::move(v));
    return inputs_staged(tree, trees, ints, i + 1, std::move(more));
  });
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const GenPair& input_generator(const std::string& strategy, std::size_t trees, std::size_t ints) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<GenPair>> cache;
  const std::string key = strategy + "/" + std::to_string(trees) + "/" + std::to_string(ints);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) {
    const workloads::Workload* w = workloads::find(strategy);
    if (w == nullptr) throw ContractError("unknown strategy " + strategy);
    // One staged tree generator, so repeated tree inputs share a definition.
    const st::Gen<Value> tree = w->make_staged();
    slot = std::make_unique<GenPair>(
        GenPair{inputs_baseline(w->make_baseline(), trees, ints, 0, {}),
                st::compile(inputs_staged(tree, trees, ints, 0, {}))});
  }
  return *slot;
}

Outcome run_task(const TaskDef& task, const std::string& strategy, Treatment t,
                 std::uint64_t seed_id, const EtnaOptions& options) {
  const GenPair& gen = input_generator(strategy, task.tree_inputs, task.int_inputs);
  Outcome out;
  out.task = task.task.id();
  out.strategy = strategy;
  out.seed_id = seed_id;
  out.treatment = t;
  Seed master = seed_of_u64(mix64(fnv1a(out.task + "/" + strategy)) ^ mix64(seed_id), t.prng);
  const auto timeout = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(options.timeout_s));
  const std::int64_t period = std::max<std::int64_t>(options.max_size, 0) + 1;
  const auto start = Clock::now();
  auto now = start;
  for (std::uint64_t i = 0; options.max_values == 0 || i < options.max_values; ++i) {
    Seed s = master.split();
    const Value inputs = gen.run(t.backend, static_cast<std::int64_t>(i) % period, s);
    ++out.values_tried;
    const bst::Verdict v = task.check(inputs);
    now = Clock::now();
    if (v == bst::Verdict::kFail) {
      out.found = true;
      break;
    }
    if (v == bst::Verdict::kDiscard) ++out.discards;
    if (now - start >= timeout) break;
  }
  out.ns = static_cast<std::uint64_t>(
      std::max<std::int64_t>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(now - start).count()));
  return out;
}

std::optional<double> speedup(const Outcome& base, const Outcome& other) {
  if (!base.found || !other.found) return std::nullopt;
  return static_cast<double>(std::max<std::uint64_t>(base.ns, 1)) /
         static_cast<double>(std::max<std::uint64_t>(other.ns, 1));
}

double geo_mean(const std::vector<double>& ratios) {
  if (ratios.empty()) throw ContractError("geo_mean: no ratios");
  double sum = 0;
  for (const double r : ratios) {
    if (!(r > 0)) throw ContractError("geo_mean: ratios must be positive");
    sum += std::log(r);
  }
  return std::exp(sum / static_cast<double>(ratios.size()));
}

FilterResult filter_tasks(const std::vector<Outcome>& outcomes, std::uint64_t threshold_ns) {
  std::map<TaskKey, std::vector<const Outcome*>> groups;
  for (const auto& o : outcomes) groups[{o.task, o.strategy}].push_back(&o);
  FilterResult result;
  for (const auto& [key, group] : groups) {
    std::vector<std::string> succeeded;
    std::vector<double> baseline_ns;
    for (const Outcome* o : group) {
      const std::string t = to_string(o->treatment);
      if (o->found && std::find(succeeded.begin(), succeeded.end(), t) == succeeded.end()) {
        succeeded.push_back(t);
      }
      if (o->treatment == kBaselineFast) baseline_ns.push_back(static_cast<double>(o->ns));
    }
    if (succeeded.empty()) {
      result.excluded[key] = "all treatments failed";
    } else if (succeeded.size() == 1) {
      result.retained.push_back(key);
    } else if (!baseline_ns.empty() && median(baseline_ns) < static_cast<double>(threshold_ns)) {
      result.excluded[key] = "baseline finishes under threshold";
    } else {
      result.retained.push_back(key);
    }
  }
  return result;
}

std::vector<SpeedupRow> task_speedups(const std::vector<Outcome>& outcomes,
                                      const std::vector<TaskKey>& retained, Treatment base,
                                      Treatment versus) {
  std::vector<SpeedupRow> rows;
  for (const TaskKey& key : retained) {
    std::map<std::uint64_t, const Outcome*> base_by_seed;
    std::map<std::uint64_t, const Outcome*> other_by_seed;
    for (const auto& o : outcomes) {
      if (o.task != key.task || o.strategy != key.strategy) continue;
      if (o.treatment == base) base_by_seed[o.seed_id] = &o;
      if (o.treatment == versus) other_by_seed[o.seed_id] = &o;
    }
    std::vector<double> ratios;
    for (const auto& [seed, b] : base_by_seed) {
      auto it = other_by_seed.find(seed);
      if (it == other_by_seed.end()) continue;
      if (auto r = speedup(*b, *it->second)) ratios.push_back(*r);
    }
    SpeedupRow row{key, versus, std::nullopt, ""};
    if (ratios.empty()) {
      row.reason = "no seed where both " + to_string(base) + " and " + to_string(versus) +
                   " found the bug";
    } else {
      row.speedup = geo_mean(ratios);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> pointwise_violations(const std::vector<Outcome>& outcomes) {
  std::map<std::tuple<std::string, std::string, std::uint64_t>, std::vector<const Outcome*>> groups;
  for (const auto& o : outcomes) {
    if (o.found) groups[{o.task, o.strategy, o.seed_id}].push_back(&o);
  }
  std::vector<std::string> out;
  for (const auto& [key, group] : groups) {
    for (const Outcome* o : group) {
      if (o->values_tried != group.front()->values_tried) {
        out.push_back(std::get<0>(key) + " " + std::get<1>(key) + " seed " +
                      std::to_string(std::get<2>(key)) + ": " + to_string(group.front()->treatment) +
                      " tried " + std::to_string(group.front()->values_tried) + ", " +
                      to_string(o->treatment) + " tried " + std::to_string(o->values_tried));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {
std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}
}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "workload,treatment,size,ns_per_value,binds,samples,flagged\n";
  for (const auto& r : rows) {
    out += r.workload + "," + to_string(r.treatment) + "," + std::to_string(r.size) + "," +
           fmt(r.ns_per_value) + "," + (r.binds_per_value ? fmt(*r.binds_per_value) : "") + "," +
           (r.samples_per_value ? fmt(*r.samples_per_value) : "") + "," +
           (r.flagged ? "1" : "0") + "\n";
  }
  return out;
}

std::string etna_csv(const std::vector<Outcome>& rows) {
  std::string out = "task,strategy,seed,treatment,found,ns,values_tried\n";
  for (const auto& r : rows) {
    out += r.task + "," + r.strategy + "," + std::to_string(r.seed_id) + "," +
           to_string(r.treatment) + "," + (r.found ? "1" : "0") + "," + std::to_string(r.ns) +
           "," + std::to_string(r.values_tried) + "\n";
  }
  return out;
}

std::string speedup_csv(const std::vector<SpeedupRow>& rows) {
  std::string out = "task,strategy,versus,speedup,reason\n";
  for (const auto& r : rows) {
    out += r.key.task + "," + r.key.strategy + "," + to_string(r.versus) + "," +
           (r.speedup ? fmt(*r.speedup) : "") + "," + r.reason + "\n";
  }
  return out;
}

}  // namespace stagegen::harness
