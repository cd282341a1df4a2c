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

// Binary search trees over Value: Leaf is node tag 0 with no fields, Node is
// tag 1 with fields (left, key, value, right). Reference operations take a
// mutant selector; BstMutant::kNone is the correct implementation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stagegen/value.hpp"

namespace stagegen::bst {

inline constexpr std::int32_t kLeaf = 0;
inline constexpr std::int32_t kNode = 1;

enum class BstMutant : std::uint8_t {
  kNone,
  kInsertLe,
  kInsertDrop,
  kInsertNoUpdate,
  kDeleteDropSubtree,
  kDeleteNoRecurse,
  kDeleteWrongSide,
  kUnionRightBias,
  kUnionNoSplit,
  kUnionSwapSplit,
};

enum class BstProperty : std::uint8_t {
  kInsertValid,
  kInsertPost,
  kDeleteValid,
  kDeletePost,
  kUnionValid,
  kUnionPost,
};

Value leaf();
Value node(Value left, std::int64_t key, std::int64_t value, Value right);

bool is_bst(const Value& t);
std::optional<std::int64_t> find(std::int64_t key, const Value& t);
std::vector<std::int64_t> keys(const Value& t);
std::size_t count(const Value& t);

Value insert(std::int64_t key, std::int64_t value, const Value& t,
             BstMutant m = BstMutant::kNone);
Value remove(std::int64_t key, const Value& t, BstMutant m = BstMutant::kNone);
Value unite(const Value& t1, const Value& t2, BstMutant m = BstMutant::kNone);

// Input shapes, trees first, then integers:
//   InsertValid (t, k, v)      InsertPost (t, k, k2, v)
//   DeleteValid (t, k)         DeletePost (t, k, k2)
//   UnionValid  (t1, t2)       UnionPost  (t1, t2, k)
std::size_t tree_inputs(BstProperty p);
std::size_t int_inputs(BstProperty p);

enum class Verdict : std::uint8_t { kPass, kFail, kDiscard };

// Checks the property on a tuple of inputs in the order above. Inputs that
// violate the precondition (an invalid tree) are discarded.
Verdict check(BstProperty p, const Value& inputs, BstMutant m);

std::string to_string(BstMutant m);
std::string to_string(BstProperty p);
std::optional<BstMutant> mutant_from_string(const std::string& s);
std::optional<BstProperty> property_from_string(const std::string& s);

}  // namespace stagegen::bst
