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

// Generators derived from a datatype description. The same compositional
// algorithm runs over the baseline and the staged combinators, so the two
// derived generators agree value for value:
//
//   Int / Bool    primitive draw
//   Product       fields bound left to right, then a tuple
//   Sum           weighted union over the variants; a variant's value is a
//                 node tagged with the variant index whose fields are the
//                 body's product fields (or the single body value)
//   Rec           fixed point that reads the size once per unfolding
//   RecRef        recursive call under with_size(size / 2)

#include <cstdint>
#include <string>
#include <vector>

#include "stagegen/baseline.hpp"
#include "stagegen/staged.hpp"
#include "stagegen/value.hpp"

namespace stagegen::derive {

struct Variant;

struct Schema {
  enum class Kind { kInt, kBool, kProduct, kSum, kRec, kRecRef };

  Kind kind = Kind::kBool;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<Schema> children;  // product fields, or the single rec body
  std::vector<Variant> variants;

  static Schema integer(std::int64_t lo, std::int64_t hi);
  static Schema boolean();
  static Schema product(std::vector<Schema> fields);
  static Schema sum(std::vector<Variant> variants);
  static Schema rec(Schema body);
  static Schema rec_ref();
};

struct Weight {
  enum class Kind { kConst, kCurrentSize };
  Kind kind = Kind::kConst;
  std::int64_t value = 1;

  static Weight constant(std::int64_t w) { return {Kind::kConst, w}; }
  static Weight current_size() { return {Kind::kCurrentSize, 0}; }
};

struct Variant {
  std::string tag;
  Weight weight;
  Schema body;
};

// Throws SchemaError when the schema cannot be derived: RecRef outside a
// Rec, an empty Sum, a negative weight, a Sum with no positively weighted
// variant free of recursion, or a recursive variant with a constant
// positive weight (which would not shrink with size).
void validate(const Schema& schema);

baseline::Gen<Value> derive_baseline(const Schema& schema);
staged::Gen<Value> derive_staged(const Schema& schema);

// JSON form, e.g.
//   {"kind": "rec", "body": {"kind": "sum", "variants": [
//     {"tag": "Leaf", "weight": 1, "body": {"kind": "product", "fields": []}},
//     {"tag": "Node", "weight": "size", "body": {"kind": "product", "fields": [
//       {"kind": "recref"}, {"kind": "int", "lo": 0, "hi": 100}, ...]}}]}}
Schema parse_schema_json(const std::string& text);
std::string schema_to_json(const Schema& schema);

// Schemas used by the benchmark workloads.
Schema bst_schema();
Schema stlc_type_schema();
Schema stlc_term_schema();

}  // namespace stagegen::derive
