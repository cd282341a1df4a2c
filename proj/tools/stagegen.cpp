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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "stagegen/derive.hpp"
#include "stagegen/errors.hpp"
#include "stagegen/harness.hpp"
#include "stagegen/svg.hpp"
#include "stagegen/workloads.hpp"

namespace fs = std::filesystem;
using namespace stagegen;
namespace hs = stagegen::harness;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  bool list = false;
  std::string prng = "both";
  std::string backend = "both";
};

fs::path out_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("STAGEGEN_OUT"); env != nullptr && *env != '\0') return env;
  return "stagegen-out";
}

void write_file(const Common& c, const std::string& name, const std::string& text) {
  const fs::path dir = out_dir(c);
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  std::cerr << "wrote " << (dir / name).string() << "\n";
}

std::string listing(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) s += "  " + i + "\n";
  return s;
}

std::vector<std::string> workload_listing() {
  std::vector<std::string> out;
  for (const auto& w : workloads::registry()) {
    out.push_back(fmt::format("{:<16} {}{}", w.id, w.description, w.benchmark ? "" : " (micro)"));
  }
  return out;
}

std::vector<std::string> task_listing() {
  std::vector<std::string> out;
  for (const auto& t : hs::tasks()) {
    out.push_back(fmt::format("{:<42} {}{}", t.task.id(), t.description, t.paired ? "" : " (secondary)"));
  }
  return out;
}

// "benchmarks" selects the benchmark set, "all" adds the micro workloads.
std::vector<const workloads::Workload*> select_workloads(const std::string& selector) {
  std::vector<const workloads::Workload*> out;
  if (selector == "all" || selector == "benchmarks") {
    for (const auto& w : workloads::registry()) {
      if (selector == "all" || w.benchmark) out.push_back(&w);
    }
    return out;
  }
  std::stringstream ss(selector);
  std::string id;
  while (std::getline(ss, id, ',')) {
    const workloads::Workload* w = workloads::find(id);
    if (w == nullptr) {
      throw UsageError("unknown workload '" + id + "'; registered workloads:\n" +
                       listing(workloads::ids()));
    }
    out.push_back(w);
  }
  return out;
}

std::vector<hs::Treatment> select_treatments(const Common& c) {
  std::vector<hs::Treatment> out;
  for (const hs::Treatment& t : hs::all_treatments()) {
    const bool backend_ok = c.backend == "both" || c.backend == hs::to_string(t.backend);
    const bool prng_ok = c.prng == "both" || c.prng == to_string(t.prng);
    if (backend_ok && prng_ok) out.push_back(t);
  }
  return out;
}

std::string safe_name(const std::string& s) {
  std::string out = s;
  for (char& ch : out) {
    if (ch == ':' || ch == ',' || ch == '/' || ch == ' ') ch = '_';
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  Common common;
  std::string workload = "benchmarks";
  std::vector<std::int64_t> sizes = {10, 100, 1000, 10000};
  double duration = 1.0;
  int rounds = 5;
  bool instrument = false;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& a) {
  if (a.common.list) {
    std::cout << listing(workload_listing());
    return kOk;
  }
  const auto selected = select_workloads(a.workload);
  const auto treatments = select_treatments(a.common);
  hs::BenchOptions opt;
  opt.sizes = a.sizes;
  opt.min_duration_s = a.duration;
  opt.rounds = a.rounds;
  opt.instrument = a.instrument;
  opt.master_seed = a.seed;
  std::vector<hs::BenchRow> rows;
  for (const auto* w : selected) {
    auto r = hs::bench(*w, treatments, opt);
    for (const auto& row : r) {
      std::cout << fmt::format("{:<16} {:<14} {:>6} {:>14.1f} ns/value{}\n", row.workload,
                               hs::to_string(row.treatment), row.size, row.ns_per_value,
                               row.flagged ? "  [flagged]" : "");
    }
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const std::string sel = safe_name(a.workload);
  write_file(a.common, "bench_" + sel + ".csv", hs::bench_csv(rows));
  for (const auto* w : selected) {
    std::vector<svg::Series> series;
    for (const auto& t : treatments) {
      svg::Series s{hs::to_string(t), {}};
      for (const auto& row : rows) {
        if (row.workload == w->id && row.treatment == t) {
          s.points.emplace_back(static_cast<double>(row.size), row.ns_per_value);
        }
      }
      series.push_back(std::move(s));
    }
    write_file(a.common, "bench_" + safe_name(w->id) + ".svg",
               svg::line_chart("Time to generate values: " + w->id, "size", "ns per value", series));
  }
  if (a.instrument) {
    // Bind count against staging speedup, at size 100 when it was measured.
    std::string csv = "workload,binds,samples,size,speedup\n";
    std::vector<svg::Point> points;
    for (const auto* w : selected) {
      const hs::BenchRow* base = nullptr;
      const hs::BenchRow* staged = nullptr;
      for (const auto& row : rows) {
        if (row.workload != w->id) continue;
        const bool preferred = row.size == 100;
        if (row.treatment == hs::kBaselineFast && (base == nullptr || preferred)) base = &row;
        if (row.treatment == hs::kStagedFast && (staged == nullptr || preferred)) staged = &row;
      }
      if (base == nullptr || staged == nullptr || !base->binds_per_value) continue;
      const double speedup = base->ns_per_value / staged->ns_per_value;
      csv += fmt::format("{},{},{},{},{:.4g}\n", w->id, *base->binds_per_value,
                         *base->samples_per_value, base->size, speedup);
      points.push_back({w->id, *base->binds_per_value, speedup});
    }
    write_file(a.common, "bench_" + sel + "_binds.csv", csv);
    write_file(a.common, "bench_" + sel + "_binds.svg",
               svg::scatter("Binds per value vs staging speedup", "binds per value (baseline)",
                            "speedup (baseline-fast / staged-fast)", points));
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct EtnaArgs {
  Common common;
  std::string task = "all";
  std::string strategy = "all";
  std::uint64_t seeds = 10;
  double timeout = 10;
  std::int64_t max_size = 20;
  std::uint64_t max_values = 0;
  double threshold_ms = 5;
};

int cmd_etna(const EtnaArgs& a) {
  if (a.common.list) {
    std::cout << listing(task_listing());
    std::cout << "strategies:\n" << listing(hs::strategies_for("bst")) << listing(hs::strategies_for("stlc"));
    return kOk;
  }
  std::vector<const hs::TaskDef*> selected;
  if (a.task == "all" || a.task == "bst" || a.task == "stlc") {
    for (const auto& t : hs::tasks()) {
      if (a.task == "all" || t.task.family == a.task) selected.push_back(&t);
    }
  } else {
    const hs::TaskDef* t = hs::find_task(a.task);
    if (t == nullptr) {
      std::vector<std::string> ids;
      for (const auto& d : hs::tasks()) ids.push_back(d.task.id());
      throw UsageError("unknown task '" + a.task + "'; registered tasks:\n" + listing(ids));
    }
    selected.push_back(t);
  }
  const auto treatments = select_treatments(a.common);
  hs::EtnaOptions opt;
  opt.timeout_s = a.timeout;
  opt.max_size = a.max_size;
  opt.max_values = a.max_values;
  std::vector<hs::Outcome> outcomes;
  for (const auto* t : selected) {
    std::vector<std::string> strategies;
    if (a.strategy == "all") {
      strategies = hs::strategies_for(t->task.family);
    } else if (a.strategy == "canonical") {
      strategies = {hs::canonical_strategy(t->task.family)};
    } else {
      const auto known = hs::strategies_for(t->task.family);
      if (std::find(known.begin(), known.end(), a.strategy) == known.end()) {
        throw UsageError("strategy '" + a.strategy + "' does not apply to " + t->task.id() +
                         "; choose from:\n" + listing(known));
      }
      strategies = {a.strategy};
    }
    for (const auto& s : strategies) {
      hs::with_large_stack([&] {
        for (std::uint64_t seed = 0; seed < a.seeds; ++seed) {
          for (const auto& tr : treatments) {
            outcomes.push_back(hs::run_task(*t, s, tr, seed, opt));
          }
        }
      });
      std::size_t found = 0;
      for (auto it = outcomes.end() - static_cast<std::ptrdiff_t>(a.seeds * treatments.size());
           it != outcomes.end(); ++it) {
        found += it->found;
      }
      std::cout << fmt::format("{:<42} {:<16} found {}/{}\n", t->task.id(), s, found,
                               a.seeds * treatments.size());
    }
  }
  const std::string sel = safe_name(a.task == "all" ? "all" : a.task) +
                          (a.strategy == "all" ? "" : "_" + safe_name(a.strategy));
  write_file(a.common, "etna_" + sel + ".csv", hs::etna_csv(outcomes));

  const auto filtered =
      hs::filter_tasks(outcomes, static_cast<std::uint64_t>(a.threshold_ms * 1e6));
  std::vector<hs::SpeedupRow> speedups;
  std::vector<svg::Bar> bars;
  std::vector<std::string> groups;
  for (const auto& k : filtered.retained) groups.push_back(k.task + " " + k.strategy);
  for (const hs::Treatment& base : {hs::kBaselineFast, hs::kBaselineSlow}) {
    for (const hs::Treatment& versus : treatments) {
      if (versus == base || versus.backend == hs::Backend::kBaseline) continue;
      auto rows = hs::task_speedups(outcomes, filtered.retained, base, versus);
      svg::Bar bar{hs::to_string(versus) + " vs " + hs::to_string(base), {}};
      std::vector<double> ratios;
      for (const auto& r : rows) {
        bar.values.push_back(r.speedup.value_or(std::nan("")));
        if (r.speedup) ratios.push_back(*r.speedup);
      }
      if (!ratios.empty()) {
        std::cout << fmt::format("geometric mean speedup {} over {}: {:.3f} ({} tasks)\n",
                                 hs::to_string(versus), hs::to_string(base), hs::geo_mean(ratios),
                                 ratios.size());
      }
      bars.push_back(std::move(bar));
      speedups.insert(speedups.end(), rows.begin(), rows.end());
    }
  }
  std::string excluded = "task,strategy,reason\n";
  for (const auto& [k, why] : filtered.excluded) excluded += k.task + "," + k.strategy + "," + why + "\n";
  write_file(a.common, "etna_" + sel + "_speedup.csv", hs::speedup_csv(speedups));
  write_file(a.common, "etna_" + sel + "_excluded.csv", excluded);
  write_file(a.common, "etna_" + sel + ".svg",
             svg::bar_chart("Bug-finding speedup per task", "speedup", groups, bars));

  const auto violations = hs::pointwise_violations(outcomes);
  for (const auto& v : violations) std::cerr << "pointwise violation: " << v << "\n";
  return violations.empty() ? kOk : kFailure;
}

// ---------------------------------------------------------------------------

struct DiffArgs {
  Common common;
  std::string workload = "all";
  std::uint64_t seeds = 1000;
  std::vector<std::int64_t> sizes = {10, 100};
  bool dump_ir = false;
};

int cmd_diff(const DiffArgs& a) {
  if (a.common.list) {
    std::cout << listing(workload_listing());
    return kOk;
  }
  const auto selected = select_workloads(a.workload);
  std::string csv = "workload,size,seed,detail\n";
  std::uint64_t divergences = 0;
  for (const auto* w : selected) {
    if (a.dump_ir) {
      std::cout << "# " << w->id << "\n" << staged::compile(w->make_staged()).ir_text() << "\n";
      continue;
    }
    const auto report = hs::diff_test(*w, a.sizes, a.seeds);
    std::cout << fmt::format("{:<16} {} checks, {} divergences\n", w->id, report.checks,
                             report.divergences.size());
    for (const auto& d : report.divergences) {
      std::cout << fmt::format("  size {} seed {}: {}\n", d.size, d.seed, d.detail);
      csv += fmt::format("{},{},{},{}\n", d.workload, d.size, d.seed, csv_quote(d.detail));
    }
    divergences += report.divergences.size();
  }
  if (a.dump_ir) return kOk;
  write_file(a.common, "diff_" + safe_name(a.workload) + ".csv", csv);
  return divergences == 0 ? kOk : kFailure;
}

// ---------------------------------------------------------------------------

struct DeriveArgs {
  Common common;
  std::string schema_file;
  std::string builtin;
  std::int64_t size = 10;
  std::uint64_t seed = 0;
  std::uint64_t count = 5;
  std::uint64_t diff_seeds = 0;
  bool dump_ir = false;
  bool print_schema = false;
};

int cmd_derive(const DeriveArgs& a) {
  const std::map<std::string, derive::Schema (*)()> builtins = {
      {"bst", &derive::bst_schema},
      {"stlc_term", &derive::stlc_term_schema},
      {"stlc_type", &derive::stlc_type_schema}};
  if (a.common.list) {
    for (const auto& [name, _] : builtins) std::cout << "  " << name << "\n";
    return kOk;
  }
  derive::Schema schema;
  std::string sel;
  if (!a.schema_file.empty()) {
    std::ifstream f(a.schema_file);
    if (!f) throw UsageError("cannot read schema file " + a.schema_file);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      schema = derive::parse_schema_json(ss.str());
    } catch (const SchemaError& e) {
      throw UsageError(e.what());
    }
    sel = fs::path(a.schema_file).stem().string();
  } else {
    const std::string name = a.builtin.empty() ? "bst" : a.builtin;
    auto it = builtins.find(name);
    if (it == builtins.end()) {
      std::string names;
      for (const auto& [n, _] : builtins) names += "  " + n + "\n";
      throw UsageError("unknown builtin schema '" + name + "'; available:\n" + names);
    }
    schema = it->second();
    sel = name;
  }
  if (a.print_schema) {
    std::cout << derive::schema_to_json(schema) << "\n";
    return kOk;
  }
  const auto base = derive::derive_baseline(schema);
  const auto compiled = staged::compile(derive::derive_staged(schema));
  if (a.dump_ir) {
    std::cout << compiled.ir_text();
    return kOk;
  }
  if (a.diff_seeds > 0) {
    hs::DiffReport report;
    hs::with_large_stack(
        [&] { report = hs::diff_generators(sel, base, compiled, {a.size}, a.diff_seeds); });
    std::cout << fmt::format("{} checks, {} divergences\n", report.checks, report.divergences.size());
    for (const auto& d : report.divergences) std::cout << fmt::format("  seed {}: {}\n", d.seed, d.detail);
    if (!report.divergences.empty()) return kFailure;
  }
  const auto treatments = select_treatments(a.common);
  const hs::Backend backend = treatments.empty() ? hs::Backend::kBaseline : treatments.front().backend;
  std::string csv = "seed,size,value\n";
  hs::with_large_stack([&] {
    for (std::uint64_t i = 0; i < a.count; ++i) {
      Seed s = seed_of_u64(a.seed + i);
      const Value v = backend == hs::Backend::kBaseline ? base(a.size, s) : compiled(a.size, s);
      std::cout << v.to_string() << "\n";
      csv += fmt::format("{},{},{}\n", a.seed + i, a.size, csv_quote(v.to_string()));
    }
  });
  write_file(a.common, "derive_" + safe_name(sel) + ".csv", csv);
  return kOk;
}

// ---------------------------------------------------------------------------

struct KatArgs {
  Common common;
  std::uint64_t seed = 0;
  std::uint64_t count = 3;
  std::string kat_file;
};

int cmd_prng_kat(const KatArgs& a) {
  if (a.common.list) {
    std::cout << "  fast\n  slow\n";
    return kOk;
  }
  const PrngVariant variant = a.common.prng == "slow" ? PrngVariant::kIndirectSlow : PrngVariant::kFast;
  Seed s = seed_of_u64(a.seed, variant);
  std::vector<std::string> words;
  std::string csv = "index,word\n";
  for (std::uint64_t i = 0; i < a.count; ++i) {
    words.push_back(fmt::format("{:016x}", s.next_u64()));
    std::cout << words.back() << "\n";
    csv += fmt::format("{},{}\n", i, words.back());
  }
  write_file(a.common, fmt::format("prng-kat_{}.csv", a.seed), csv);
  if (a.kat_file.empty()) return kOk;
  // The file holds consecutive blocks of 1000 words, one block per seed
  // starting at seed 0.
  std::ifstream f(a.kat_file);
  if (!f) throw UsageError("cannot read " + a.kat_file);
  std::vector<std::string> lines;
  for (std::string line; std::getline(f, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  const std::uint64_t start = a.seed * 1000;
  if (a.count > 1000 || start + a.count > lines.size()) {
    throw UsageError("known-answer file does not cover seed " + std::to_string(a.seed) +
                     " with count " + std::to_string(a.count));
  }
  for (std::uint64_t i = 0; i < a.count; ++i) {
    if (lines[start + i] != words[i]) {
      std::cerr << fmt::format("mismatch at output {}: expected {} got {}\n", i, lines[start + i], words[i]);
      return kFailure;
    }
  }
  std::cerr << "all " << a.count << " outputs match " << a.kat_file << "\n";
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool with_treatment) {
  sub->add_flag("--list", c.list, "List registered items and exit");
  sub->add_option("--out", c.out, "Output directory (default $STAGEGEN_OUT or ./stagegen-out)");
  if (with_treatment) {
    sub->add_option("--prng", c.prng, "PRNG variant")->check(CLI::IsMember({"fast", "slow", "both"}));
    sub->add_option("--backend", c.backend, "Generator backend")
        ->check(CLI::IsMember({"baseline", "staged", "both"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stagegen: staged random generators, benchmarks and bug-finding runs"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time generation per workload, treatment and size");
  add_common(b, bench.common, true);
  b->add_option("--workload", bench.workload, "Workload id, comma list, 'benchmarks' or 'all'");
  b->add_option("--sizes", bench.sizes, "Generation sizes")->delimiter(',');
  b->add_option("--duration", bench.duration, "Timed seconds per treatment and size");
  b->add_option("--rounds", bench.rounds, "Interleaved rounds; the median is reported");
  b->add_flag("--instrument", bench.instrument, "Count binds and samples at size 100");
  b->add_option("--seed", bench.seed, "Master seed");

  EtnaArgs etna;
  auto* e = app.add_subcommand("etna", "Time-to-failure runs over mutant/property tasks");
  add_common(e, etna.common, true);
  e->add_option("--task", etna.task, "Task id (family:mutant:property), 'bst', 'stlc' or 'all'");
  e->add_option("--strategy", etna.strategy, "Input strategy, 'canonical' or 'all'");
  e->add_option("--seeds", etna.seeds, "Number of seeds");
  e->add_option("--timeout", etna.timeout, "Seconds per run");
  e->add_option("--max-size", etna.max_size, "Sizes cycle through 0..max-size");
  e->add_option("--max-values", etna.max_values, "Stop after this many values (0: no cap)");
  e->add_option("--threshold-ms", etna.threshold_ms, "Exclude tasks the baseline solves faster");

  DiffArgs diff;
  auto* d = app.add_subcommand("diff", "Check baseline and staged generators agree");
  add_common(d, diff.common, false);
  d->add_option("--workload", diff.workload, "Workload id, comma list or 'all'");
  d->add_option("--seeds", diff.seeds, "Number of seeds");
  d->add_option("--sizes", diff.sizes, "Generation sizes")->delimiter(',');
  d->add_flag("--dump-ir", diff.dump_ir, "Print the staged IR instead of testing");

  DeriveArgs der;
  auto* r = app.add_subcommand("derive", "Generate values from a schema");
  add_common(r, der.common, true);
  r->add_option("--schema", der.schema_file, "JSON schema file");
  r->add_option("--builtin", der.builtin, "Built-in schema (bst, stlc_term, stlc_type)");
  r->add_option("--size", der.size, "Generation size");
  r->add_option("--seed", der.seed, "First seed");
  r->add_option("--count", der.count, "Number of values");
  r->add_option("--diff", der.diff_seeds, "Also check both backends agree over this many seeds");
  r->add_flag("--dump-ir", der.dump_ir, "Print the staged IR");
  r->add_flag("--print-schema", der.print_schema, "Print the schema as JSON");

  KatArgs kat;
  kat.common.prng = "fast";
  auto* k = app.add_subcommand("prng-kat", "Print SplitMix64 outputs, optionally checked against a file");
  add_common(k, kat.common, false);
  k->add_option("--prng", kat.common.prng, "PRNG variant")->check(CLI::IsMember({"fast", "slow"}));
  k->add_option("--seed", kat.seed, "Seed");
  k->add_option("--count", kat.count, "Number of outputs");
  k->add_option("--kat", kat.kat_file, "Known-answer file to compare against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }

  try {
    if (*b) return cmd_bench(bench);
    if (*e) return cmd_etna(etna);
    if (*d) return cmd_diff(diff);
    if (*r) return cmd_derive(der);
    if (*k) return cmd_prng_kat(kat);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
