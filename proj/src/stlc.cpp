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

#include "stagegen/stlc.hpp"

#include <utility>

namespace stagegen::stlc {

namespace {

constexpr int kMultiSteps = 32;
constexpr std::size_t kMaxTermSize = 20000;

Value beta(const Value& body, const Value& arg, StlcMutant m) {
  const Value shifted_arg =
      m == StlcMutant::kStepNoArgShift ? arg : shift(1, 0, arg, m);
  Value r = subst(0, shifted_arg, body, m);
  if (m == StlcMutant::kStepNoShiftDown) return r;
  return shift(-1, 0, r, m);
}

}  // namespace

Value base() { return Value::node(kBase, {}); }
Value arrow(Value dom, Value cod) {
  return Value::node(kArrow, {std::move(dom), std::move(cod)});
}
Value var(std::int64_t i) { return Value::node(kVar, {Value::integer(i)}); }
Value lam(Value ty, Value body) {
  return Value::node(kLam, {std::move(ty), std::move(body)});
}
Value app(Value fun, Value arg) {
  return Value::node(kApp, {std::move(fun), std::move(arg)});
}
Value constant(std::int64_t n) { return Value::node(kConst, {Value::integer(n)}); }
Value nil() { return Value::node(kNil, {}); }
Value cons(Value ty, Value rest) {
  return Value::node(kCons, {std::move(ty), std::move(rest)});
}

std::int64_t count_vars(const Value& ctx, const Value& ty) {
  std::int64_t n = 0;
  for (const Value* c = &ctx; c->tag() == kCons; c = &c->field(1)) {
    if (c->field(0) == ty) ++n;
  }
  return n;
}

std::int64_t nth_var(const Value& ctx, const Value& ty, std::int64_t i) {
  std::int64_t index = 0;
  for (const Value* c = &ctx; c->tag() == kCons; c = &c->field(1), ++index) {
    if (c->field(0) == ty && i-- == 0) return index;
  }
  return -1;
}

std::optional<Value> typecheck(const Value& ctx, const Value& t) {
  switch (t.tag()) {
    case kVar: {
      std::int64_t i = t.field(0).as_int();
      if (i < 0) return std::nullopt;
      const Value* c = &ctx;
      for (; c->tag() == kCons && i > 0; c = &c->field(1)) --i;
      if (c->tag() != kCons) return std::nullopt;
      return c->field(0);
    }
    case kLam: {
      auto body = typecheck(cons(t.field(0), ctx), t.field(1));
      if (!body) return std::nullopt;
      return arrow(t.field(0), std::move(*body));
    }
    case kApp: {
      auto f = typecheck(ctx, t.field(0));
      if (!f || f->tag() != kArrow) return std::nullopt;
      auto a = typecheck(ctx, t.field(1));
      if (!a || !(*a == f->field(0))) return std::nullopt;
      return f->field(1);
    }
    case kConst:
      return base();
  }
  return std::nullopt;
}

std::optional<Value> typecheck(const Value& term) { return typecheck(nil(), term); }

Value shift(std::int64_t d, std::int64_t cutoff, const Value& t, StlcMutant m) {
  switch (t.tag()) {
    case kVar: {
      const std::int64_t i = t.field(0).as_int();
      if (m == StlcMutant::kShiftNoCutoff || i >= cutoff) return var(i + d);
      return t;
    }
    case kLam:
      return lam(t.field(0), shift(d, cutoff + 1, t.field(1), m));
    case kApp:
      return app(shift(d, cutoff, t.field(0), m), shift(d, cutoff, t.field(1), m));
    default:
      return t;
  }
}

Value subst(std::int64_t j, const Value& s, const Value& t, StlcMutant m) {
  switch (t.tag()) {
    case kVar:
      return t.field(0).as_int() == j ? s : t;
    case kLam: {
      const std::int64_t inner = m == StlcMutant::kSubstNoIndexInc ? j : j + 1;
      const Value s2 = m == StlcMutant::kSubstNoShift ? s : shift(1, 0, s, m);
      return lam(t.field(0), subst(inner, s2, t.field(1), m));
    }
    case kApp:
      return app(subst(j, s, t.field(0), m), subst(j, s, t.field(1), m));
    default:
      return t;
  }
}

std::optional<Value> step(const Value& t, StlcMutant m) {
  switch (t.tag()) {
    case kApp: {
      const Value& f = t.field(0);
      if (f.tag() == kLam) return beta(f.field(1), t.field(1), m);
      if (auto f2 = step(f, m)) return app(std::move(*f2), t.field(1));
      if (auto a2 = step(t.field(1), m)) return app(f, std::move(*a2));
      return std::nullopt;
    }
    case kLam:
      if (auto b = step(t.field(1), m)) return lam(t.field(0), std::move(*b));
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

bool is_value(const Value& t) { return t.tag() == kLam || t.tag() == kConst; }

std::size_t term_size(const Value& t) {
  switch (t.tag()) {
    case kLam:
      return 1 + term_size(t.field(1));
    case kApp:
      return 1 + term_size(t.field(0)) + term_size(t.field(1));
    default:
      return 1;
  }
}

bst::Verdict check(StlcProperty p, const Value& term, StlcMutant m) {
  using bst::Verdict;
  const auto ty = typecheck(term);
  if (!ty) return Verdict::kDiscard;
  switch (p) {
    case StlcProperty::kSinglePreserve: {
      const auto next = step(term, m);
      if (!next) return Verdict::kPass;
      const auto ty2 = typecheck(*next);
      return ty2 && *ty2 == *ty ? Verdict::kPass : Verdict::kFail;
    }
    case StlcProperty::kMultiPreserve: {
      Value cur = term;
      for (int i = 0; i < kMultiSteps; ++i) {
        auto next = step(cur, m);
        if (!next) break;
        const auto ty2 = typecheck(*next);
        if (!ty2 || !(*ty2 == *ty)) return Verdict::kFail;
        cur = std::move(*next);
        if (term_size(cur) > kMaxTermSize) break;
      }
      return Verdict::kPass;
    }
    case StlcProperty::kProgress:
      return is_value(term) || step(term, m) ? Verdict::kPass : Verdict::kFail;
  }
  return Verdict::kDiscard;
}

namespace {
constexpr std::pair<StlcMutant, const char*> kMutantNames[] = {
    {StlcMutant::kNone, "none"},
    {StlcMutant::kSubstNoShift, "subst_no_shift"},
    {StlcMutant::kSubstNoIndexInc, "subst_no_index_inc"},
    {StlcMutant::kShiftNoCutoff, "shift_no_cutoff"},
    {StlcMutant::kStepNoShiftDown, "step_no_shift_down"},
    {StlcMutant::kStepNoArgShift, "step_no_arg_shift"},
};
constexpr std::pair<StlcProperty, const char*> kPropertyNames[] = {
    {StlcProperty::kSinglePreserve, "SinglePreserve"},
    {StlcProperty::kMultiPreserve, "MultiPreserve"},
    {StlcProperty::kProgress, "Progress"},
};
}  // namespace

std::string to_string(StlcMutant m) {
  for (const auto& [k, name] : kMutantNames) {
    if (k == m) return name;
  }
  return "?";
}

std::string to_string(StlcProperty p) {
  for (const auto& [k, name] : kPropertyNames) {
    if (k == p) return name;
  }
  return "?";
}

std::optional<StlcMutant> mutant_from_string(const std::string& s) {
  for (const auto& [k, name] : kMutantNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

std::optional<StlcProperty> property_from_string(const std::string& s) {
  for (const auto& [k, name] : kPropertyNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

}  // namespace stagegen::stlc
