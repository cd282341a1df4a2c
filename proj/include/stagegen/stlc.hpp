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

// Simply typed lambda calculus with de Bruijn indices.
//
//   Ty   Base = tag 0 ()            Arrow = tag 1 (dom, cod)
//   Term Var = tag 0 (index)        Lam = tag 1 (ty, body)
//        App = tag 2 (fun, arg)     Const = tag 3 (n)
//   Ctx  Nil = tag 0 ()             Cons = tag 1 (ty, rest)
//
// Evaluation is full normal-order beta reduction, reducing under binders.

#include <cstdint>
#include <optional>
#include <string>

#include "stagegen/bst.hpp"
#include "stagegen/value.hpp"

namespace stagegen::stlc {

enum TyTag : std::int32_t { kBase = 0, kArrow = 1 };
enum TermTag : std::int32_t { kVar = 0, kLam = 1, kApp = 2, kConst = 3 };
enum CtxTag : std::int32_t { kNil = 0, kCons = 1 };

enum class StlcMutant : std::uint8_t {
  kNone,
  kSubstNoShift,
  kSubstNoIndexInc,
  kShiftNoCutoff,
  kStepNoShiftDown,
  kStepNoArgShift,
};

enum class StlcProperty : std::uint8_t {
  kSinglePreserve,
  kMultiPreserve,
  kProgress,
};

Value base();
Value arrow(Value dom, Value cod);
Value var(std::int64_t i);
Value lam(Value ty, Value body);
Value app(Value fun, Value arg);
Value constant(std::int64_t n);
Value nil();
Value cons(Value ty, Value rest);

// Variables of type `ty` in `ctx`, and the de Bruijn index of the i-th one.
std::int64_t count_vars(const Value& ctx, const Value& ty);
std::int64_t nth_var(const Value& ctx, const Value& ty, std::int64_t i);

std::optional<Value> typecheck(const Value& ctx, const Value& term);
std::optional<Value> typecheck(const Value& term);  // closed terms

Value shift(std::int64_t d, std::int64_t cutoff, const Value& t,
            StlcMutant m = StlcMutant::kNone);
Value subst(std::int64_t j, const Value& s, const Value& t,
            StlcMutant m = StlcMutant::kNone);
std::optional<Value> step(const Value& t, StlcMutant m = StlcMutant::kNone);

bool is_value(const Value& t);
std::size_t term_size(const Value& t);

// Single-term properties; ill-typed inputs are discarded.
bst::Verdict check(StlcProperty p, const Value& term, StlcMutant m);

std::string to_string(StlcMutant m);
std::string to_string(StlcProperty p);
std::optional<StlcMutant> mutant_from_string(const std::string& s);
std::optional<StlcProperty> property_from_string(const std::string& s);

}  // namespace stagegen::stlc
