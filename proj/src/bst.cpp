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

#include "stagegen/bst.hpp"

#include <limits>
#include <tuple>

namespace stagegen::bst {

namespace {

bool is_leaf(const Value& t) { return t.tag() == kLeaf; }
const Value& left(const Value& t) { return t.field(0); }
std::int64_t key_of(const Value& t) { return t.field(1).as_int(); }
std::int64_t value_of(const Value& t) { return t.field(2).as_int(); }
const Value& right(const Value& t) { return t.field(3); }

bool bounded(const Value& t, std::int64_t lo, std::int64_t hi, bool has_lo,
             bool has_hi) {
  if (is_leaf(t)) return true;
  const std::int64_t k = key_of(t);
  if (has_lo && k <= lo) return false;
  if (has_hi && k >= hi) return false;
  return bounded(left(t), lo, k, has_lo, true) &&
         bounded(right(t), k, hi, true, has_hi);
}

void collect(const Value& t, std::vector<std::int64_t>& out) {
  if (is_leaf(t)) return;
  collect(left(t), out);
  out.push_back(key_of(t));
  collect(right(t), out);
}

Value with_left(const Value& t, Value l) {
  return node(std::move(l), key_of(t), value_of(t), right(t));
}
Value with_right(const Value& t, Value r) {
  return node(left(t), key_of(t), value_of(t), std::move(r));
}

std::pair<std::int64_t, std::int64_t> min_binding(const Value& t) {
  const Value* cur = &t;
  while (!is_leaf(left(*cur))) cur = &left(*cur);
  return {key_of(*cur), value_of(*cur)};
}

Value remove_min(const Value& t) {
  if (is_leaf(left(t))) return right(t);
  return with_left(t, remove_min(left(t)));
}

Value join(const Value& l, const Value& r) {
  if (is_leaf(l)) return r;
  if (is_leaf(r)) return l;
  const auto [k, v] = min_binding(r);
  return node(l, k, v, remove_min(r));
}

struct Split {
  Value lo;
  std::optional<std::int64_t> found;
  Value hi;
};

Split split(std::int64_t k, const Value& t) {
  if (is_leaf(t)) return {leaf(), std::nullopt, leaf()};
  const std::int64_t tk = key_of(t);
  if (k < tk) {
    Split s = split(k, left(t));
    s.hi = with_left(t, std::move(s.hi));
    return s;
  }
  if (k > tk) {
    Split s = split(k, right(t));
    s.lo = with_right(t, std::move(s.lo));
    return s;
  }
  return {left(t), value_of(t), right(t)};
}

}  // namespace

Value leaf() { return Value::node(kLeaf, {}); }

Value node(Value left, std::int64_t key, std::int64_t value, Value right) {
  return Value::node(kNode, {std::move(left), Value::integer(key),
                             Value::integer(value), std::move(right)});
}

bool is_bst(const Value& t) { return bounded(t, 0, 0, false, false); }

std::optional<std::int64_t> find(std::int64_t key, const Value& t) {
  const Value* cur = &t;
  while (!is_leaf(*cur)) {
    const std::int64_t k = key_of(*cur);
    if (key < k) {
      cur = &left(*cur);
    } else if (key > k) {
      cur = &right(*cur);
    } else {
      return value_of(*cur);
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> keys(const Value& t) {
  std::vector<std::int64_t> out;
  collect(t, out);
  return out;
}

std::size_t count(const Value& t) {
  if (is_leaf(t)) return 0;
  return 1 + count(left(t)) + count(right(t));
}

Value insert(std::int64_t key, std::int64_t value, const Value& t, BstMutant m) {
  if (is_leaf(t)) return node(leaf(), key, value, leaf());
  const std::int64_t k = key_of(t);
  const bool go_left = m == BstMutant::kInsertLe ? key <= k : key < k;
  if (go_left) {
    if (m == BstMutant::kInsertDrop) return t;
    return with_left(t, insert(key, value, left(t), m));
  }
  if (key > k) return with_right(t, insert(key, value, right(t), m));
  if (m == BstMutant::kInsertNoUpdate) return t;
  return node(left(t), key, value, right(t));
}

Value remove(std::int64_t key, const Value& t, BstMutant m) {
  if (is_leaf(t)) return t;
  const std::int64_t k = key_of(t);
  if (key < k) {
    if (m == BstMutant::kDeleteNoRecurse) return t;
    if (m == BstMutant::kDeleteWrongSide) return with_right(t, remove(key, right(t), m));
    return with_left(t, remove(key, left(t), m));
  }
  if (key > k) return with_right(t, remove(key, right(t), m));
  if (m == BstMutant::kDeleteDropSubtree) return left(t);
  return join(left(t), right(t));
}

Value unite(const Value& t1, const Value& t2, BstMutant m) {
  if (is_leaf(t1)) return t2;
  if (is_leaf(t2)) return t1;
  const std::int64_t k = key_of(t1);
  if (m == BstMutant::kUnionNoSplit) {
    return node(unite(left(t1), t2, m), k, value_of(t1), right(t1));
  }
  Split s = split(k, t2);
  std::int64_t v = value_of(t1);
  if (m == BstMutant::kUnionRightBias && s.found) v = *s.found;
  if (m == BstMutant::kUnionSwapSplit) std::swap(s.lo, s.hi);
  return node(unite(left(t1), s.lo, m), k, v, unite(right(t1), s.hi, m));
}

std::size_t tree_inputs(BstProperty p) {
  return p == BstProperty::kUnionValid || p == BstProperty::kUnionPost ? 2 : 1;
}

std::size_t int_inputs(BstProperty p) {
  switch (p) {
    case BstProperty::kInsertValid: return 2;
    case BstProperty::kInsertPost: return 3;
    case BstProperty::kDeleteValid: return 1;
    case BstProperty::kDeletePost: return 2;
    case BstProperty::kUnionValid: return 0;
    case BstProperty::kUnionPost: return 1;
  }
  return 0;
}

Verdict check(BstProperty p, const Value& in, BstMutant m) {
  const std::size_t trees = tree_inputs(p);
  for (std::size_t i = 0; i < trees; ++i) {
    if (!is_bst(in.field(i))) return Verdict::kDiscard;
  }
  auto num = [&](std::size_t i) { return in.field(trees + i).as_int(); };
  auto verdict = [](bool ok) { return ok ? Verdict::kPass : Verdict::kFail; };
  const Value& t = in.field(0);
  switch (p) {
    case BstProperty::kInsertValid:
      return verdict(is_bst(insert(num(0), num(1), t, m)));
    case BstProperty::kInsertPost: {
      const std::int64_t k = num(0), k2 = num(1), v = num(2);
      const auto expected = k == k2 ? std::optional<std::int64_t>(v) : find(k2, t);
      return verdict(find(k2, insert(k, v, t, m)) == expected);
    }
    case BstProperty::kDeleteValid:
      return verdict(is_bst(remove(num(0), t, m)));
    case BstProperty::kDeletePost: {
      const std::int64_t k = num(0), k2 = num(1);
      const auto expected = k == k2 ? std::nullopt : find(k2, t);
      return verdict(find(k2, remove(k, t, m)) == expected);
    }
    case BstProperty::kUnionValid:
      return verdict(is_bst(unite(t, in.field(1), m)));
    case BstProperty::kUnionPost: {
      const std::int64_t k = num(0);
      auto expected = find(k, t);
      if (!expected) expected = find(k, in.field(1));
      return verdict(find(k, unite(t, in.field(1), m)) == expected);
    }
  }
  return Verdict::kDiscard;
}

namespace {
constexpr std::pair<BstMutant, const char*> kMutantNames[] = {
    {BstMutant::kNone, "none"},
    {BstMutant::kInsertLe, "insert_le"},
    {BstMutant::kInsertDrop, "insert_drop"},
    {BstMutant::kInsertNoUpdate, "insert_no_update"},
    {BstMutant::kDeleteDropSubtree, "delete_drop_subtree"},
    {BstMutant::kDeleteNoRecurse, "delete_no_recurse"},
    {BstMutant::kDeleteWrongSide, "delete_wrong_side"},
    {BstMutant::kUnionRightBias, "union_right_bias"},
    {BstMutant::kUnionNoSplit, "union_no_split"},
    {BstMutant::kUnionSwapSplit, "union_swap_split"},
};
constexpr std::pair<BstProperty, const char*> kPropertyNames[] = {
    {BstProperty::kInsertValid, "InsertValid"},
    {BstProperty::kInsertPost, "InsertPost"},
    {BstProperty::kDeleteValid, "DeleteValid"},
    {BstProperty::kDeletePost, "DeletePost"},
    {BstProperty::kUnionValid, "UnionValid"},
    {BstProperty::kUnionPost, "UnionPost"},
};
}  // namespace

std::string to_string(BstMutant m) {
  for (const auto& [k, name] : kMutantNames) {
    if (k == m) return name;
  }
  return "?";
}

std::string to_string(BstProperty p) {
  for (const auto& [k, name] : kPropertyNames) {
    if (k == p) return name;
  }
  return "?";
}

std::optional<BstMutant> mutant_from_string(const std::string& s) {
  for (const auto& [k, name] : kMutantNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

std::optional<BstProperty> property_from_string(const std::string& s) {
  for (const auto& [k, name] : kPropertyNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

}  // namespace stagegen::bst
