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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stagegen/derive.hpp"
#include "stagegen/errors.hpp"
#include "stagegen/harness.hpp"
#include "stagegen/workloads.hpp"

namespace py = pybind11;
using namespace stagegen;
namespace hs = stagegen::harness;

namespace {

// Integers and booleans map to themselves, tuples to tuples, and other
// nodes to (tag, (fields...)).
py::object to_python(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kInt:
      return py::int_(v.as_int());
    case Value::Kind::kBool:
      return py::bool_(v.as_bool());
    case Value::Kind::kNode:
      break;
  }
  py::tuple fields(v.arity());
  for (std::size_t i = 0; i < v.arity(); ++i) fields[i] = to_python(v.field(i));
  if (v.tag() == kTupleTag) return std::move(fields);
  return py::make_tuple(v.tag(), fields);
}

const workloads::Workload& workload(const std::string& id) {
  const auto* w = workloads::find(id);
  if (w == nullptr) throw py::key_error("unknown workload '" + id + "'");
  return *w;
}

hs::Treatment treatment(const std::string& name) {
  auto t = hs::treatment_from_string(name);
  if (!t) throw py::value_error("unknown treatment '" + name + "'");
  return *t;
}

py::list generate(const std::string& id, std::int64_t size, std::uint64_t seed, std::size_t count,
                  const std::string& backend) {
  const auto b = hs::backend_from_string(backend);
  if (!b) throw py::value_error("backend must be 'baseline' or 'staged'");
  const hs::GenPair g = hs::make_pair(workload(id));
  std::vector<Value> values;
  hs::with_large_stack([&] {
    for (std::size_t i = 0; i < count; ++i) {
      Seed s = seed_of_u64(seed + i);
      values.push_back(g.run(*b, size, s));
    }
  });
  py::list out;
  for (const auto& v : values) out.append(to_python(v));
  return out;
}

py::list derive_values(const std::string& schema_json, std::int64_t size, std::uint64_t seed,
                       std::size_t count, const std::string& backend) {
  const auto schema = derive::parse_schema_json(schema_json);
  const auto base = derive::derive_baseline(schema);
  const auto staged = staged::compile(derive::derive_staged(schema));
  py::list out;
  for (std::size_t i = 0; i < count; ++i) {
    Seed s = seed_of_u64(seed + i);
    out.append(to_python(backend == "staged" ? staged(size, s) : base(size, s)));
  }
  return out;
}

py::list diff(const std::string& id, const std::vector<std::int64_t>& sizes, std::uint64_t seeds) {
  const auto report = hs::diff_test(workload(id), sizes, seeds);
  py::list out;
  for (const auto& d : report.divergences) {
    out.append(py::dict(py::arg("size") = d.size, py::arg("seed") = d.seed, py::arg("detail") = d.detail));
  }
  return out;
}

py::dict run_task(const std::string& task_id, const std::string& strategy, const std::string& treatment_name,
                  std::uint64_t seed, double timeout, std::uint64_t max_values) {
  const hs::TaskDef* t = hs::find_task(task_id);
  if (t == nullptr) throw py::key_error("unknown task '" + task_id + "'");
  hs::EtnaOptions opt;
  opt.timeout_s = timeout;
  opt.max_values = max_values;
  hs::Outcome o;
  {
    py::gil_scoped_release release;
    hs::with_large_stack([&] { o = hs::run_task(*t, strategy, treatment(treatment_name), seed, opt); });
  }
  return py::dict(py::arg("task") = o.task, py::arg("strategy") = o.strategy, py::arg("seed") = o.seed_id,
                  py::arg("treatment") = hs::to_string(o.treatment), py::arg("found") = o.found,
                  py::arg("ns") = o.ns, py::arg("values_tried") = o.values_tried,
                  py::arg("discards") = o.discards);
}

std::vector<std::string> prng_words(std::uint64_t seed, std::size_t count, const std::string& prng) {
  Seed s = seed_of_u64(seed, prng_variant_from_string(prng));
  std::vector<std::string> out;
  char buf[17];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(s.next_u64()));
    out.emplace_back(buf);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Staged random generators: workloads, differential checks and bug-finding runs.";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<CompileError>(m, "CompileError", PyExc_RuntimeError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);

  m.def("workloads", &workloads::ids, "Registered workload ids.");
  m.def("tasks", [] {
    std::vector<std::string> ids;
    for (const auto& t : hs::tasks()) ids.push_back(t.task.id());
    return ids;
  });
  m.def("strategies", &hs::strategies_for, py::arg("family"));
  m.def("treatments", [] {
    std::vector<std::string> names;
    for (const auto& t : hs::all_treatments()) names.push_back(hs::to_string(t));
    return names;
  });
  m.def("generate", &generate, py::arg("workload"), py::arg("size"), py::arg("seed") = 0,
        py::arg("count") = 1, py::arg("backend") = "baseline");
  m.def("derive", &derive_values, py::arg("schema_json"), py::arg("size"), py::arg("seed") = 0,
        py::arg("count") = 1, py::arg("backend") = "baseline");
  m.def("builtin_schema", [](const std::string& name) {
    if (name == "bst") return derive::schema_to_json(derive::bst_schema());
    if (name == "stlc_term") return derive::schema_to_json(derive::stlc_term_schema());
    if (name == "stlc_type") return derive::schema_to_json(derive::stlc_type_schema());
    throw py::key_error("unknown schema '" + name + "'");
  });
  m.def("dump_ir", [](const std::string& id) { return staged::compile(workload(id).make_staged()).ir_text(); });
  m.def("diff", &diff, py::arg("workload"), py::arg("sizes") = std::vector<std::int64_t>{10, 100},
        py::arg("seeds") = 100);
  m.def("run_task", &run_task, py::arg("task"), py::arg("strategy"), py::arg("treatment") = "baseline-fast",
        py::arg("seed") = 0, py::arg("timeout") = 10.0, py::arg("max_values") = 0);
  m.def("prng_words", &prng_words, py::arg("seed"), py::arg("count"), py::arg("prng") = "fast");
  m.def("geo_mean", &hs::geo_mean);
  m.def("rank_correlation", &hs::rank_correlation);
}
