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

// Benchmark generators, each written once per backend over the same
// sequence of effects so that the two agree value for value.
//
// Size meaning per generator:
//   bool_list        exact list length
//   bst_insert       number of random (key, value) insertions
//   bst_single_pass  node budget, halved at each recursive call
//   bst_derived      node budget, halved at each recursive call
//   stlc_derived     recursion budget, halved at each recursive call
//   stlc_welltyped   recursion budget, halved at each application
//   int_pair, grades, return   ignored

#include <functional>
#include <string>
#include <vector>

#include "stagegen/baseline.hpp"
#include "stagegen/ir.hpp"
#include "stagegen/staged.hpp"
#include "stagegen/value.hpp"

namespace stagegen::workloads {

// List encoding shared by bool_list: Nil = tag 0, Cons = tag 1 (head, tail).
inline constexpr std::int32_t kNil = 0;
inline constexpr std::int32_t kCons = 1;

struct Workload {
  std::string id;
  std::string description;
  // Member of the benchmark set (as opposed to a micro workload).
  bool benchmark = true;
  std::function<baseline::Gen<Value>()> make_baseline;
  std::function<staged::Gen<Value>()> make_staged;
};

const std::vector<Workload>& registry();
const Workload* find(const std::string& id);
std::vector<std::string> ids();

baseline::Gen<Value> bool_list_baseline();
staged::Gen<Value> bool_list_staged();
baseline::Gen<Value> bst_insert_baseline();
staged::Gen<Value> bst_insert_staged();
baseline::Gen<Value> bst_single_pass_baseline();
staged::Gen<Value> bst_single_pass_staged();
baseline::Gen<Value> bst_derived_baseline();
staged::Gen<Value> bst_derived_staged();
baseline::Gen<Value> stlc_derived_baseline();
staged::Gen<Value> stlc_derived_staged();
baseline::Gen<Value> stlc_welltyped_baseline();
staged::Gen<Value> stlc_welltyped_staged();
baseline::Gen<Value> int_pair_baseline();
staged::Gen<Value> int_pair_staged();
baseline::Gen<Value> grades_baseline();
staged::Gen<Value> grades_staged();
baseline::Gen<Value> return_baseline();
staged::Gen<Value> return_staged();

// Host functions callable from staged code.
extern const ir::ExternFn kInsertExtern;     // insert(key, value, tree)
extern const ir::ExternFn kCountVarsExtern;  // count_vars(ctx, ty)
extern const ir::ExternFn kNthVarExtern;     // nth_var(ctx, ty, i)

}  // namespace stagegen::workloads
