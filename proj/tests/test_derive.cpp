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

#include <gtest/gtest.h>

#include "stagegen/bst.hpp"
#include "stagegen/derive.hpp"
#include "stagegen/errors.hpp"
#include "stagegen/harness.hpp"
#include "stagegen/stlc.hpp"

namespace stagegen::derive {
namespace {

TEST(Derive, BoolSchemaIsACoinFlip) {
  const auto g = derive_baseline(Schema::boolean());
  Seed s = seed_of_u64(0);
  int trues = 0;
  for (int i = 0; i < 10000; ++i) {
    const Value v = g(3, s);
    ASSERT_TRUE(v.is_bool());
    trues += v.as_bool();
  }
  EXPECT_NEAR(trues / 10000.0, 0.5, 0.02);
}

TEST(Derive, IntSchemaStaysInRange) {
  const auto g = staged::compile(derive_staged(Schema::integer(-3, 3)));
  Seed s = seed_of_u64(0);
  for (int i = 0; i < 1000; ++i) {
    const auto v = g(0, s).as_int();
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
  }
}

TEST(Derive, ProductFieldsAreDrawnLeftToRight) {
  const auto g = derive_baseline(Schema::product({Schema::integer(0, 1000), Schema::integer(0, 1000)}));
  Seed a = seed_of_u64(8);
  Seed b = seed_of_u64(8);
  const Value v = g(0, a);
  EXPECT_EQ(v.field(0).as_int(), b.int_in_range(0, 1000));
  EXPECT_EQ(v.field(1).as_int(), b.int_in_range(0, 1000));
}

TEST(Derive, BstSchemaHasTheTreeShape) {
  const auto g = derive_baseline(bst_schema());
  Seed s = seed_of_u64(0);
  EXPECT_EQ(g(0, s).tag(), bst::kLeaf);
  for (int i = 0; i < 200; ++i) {
    const Value t = g(20, s);
    if (t.tag() == bst::kNode) {
      ASSERT_EQ(t.arity(), 4u);
      EXPECT_LE(t.field(1).as_int(), 100);
    } else {
      EXPECT_EQ(t.arity(), 0u);
    }
  }
}

TEST(Derive, DerivedTermsAreMostlyIllTyped) {
  const auto g = derive_baseline(stlc_term_schema());
  Seed s = seed_of_u64(0);
  int typed = 0;
  for (int i = 0; i < 1000; ++i) typed += stlc::typecheck(g(10, s)).has_value();
  EXPECT_GT(typed, 0);
  EXPECT_LT(typed, 1000);
}

TEST(Derive, BothDerivationsAgree) {
  for (const Schema& schema : {bst_schema(), stlc_term_schema(), stlc_type_schema()}) {
    const auto report = harness::diff_generators(
        "schema", derive_baseline(schema), staged::compile(derive_staged(schema)), {0, 3, 10, 100}, 250);
    EXPECT_TRUE(report.divergences.empty()) << report.divergences.front().detail;
  }
}

TEST(Derive, SmallSizesTerminate) {
  const auto g = derive_baseline(stlc_term_schema());
  for (std::int64_t size = 0; size < 8; ++size) {
    for (std::uint64_t k = 0; k < 300; ++k) {
      Seed s = seed_of_u64(k);
      EXPECT_GE(stlc::term_size(g(size, s)), 1u);
    }
  }
}

TEST(Derive, RejectsMalformedSchemas) {
  EXPECT_THROW(validate(Schema::rec_ref()), SchemaError);
  EXPECT_THROW(validate(Schema::sum({})), SchemaError);
  EXPECT_THROW(validate(Schema::integer(2, 1)), SchemaError);
  EXPECT_THROW(validate(Schema::sum({{"A", Weight::constant(-1), Schema::boolean()}})), SchemaError);
  // No variant reachable at size 0.
  EXPECT_THROW(validate(Schema::rec(Schema::sum(
                   {{"A", Weight::current_size(), Schema::product({Schema::rec_ref()})}}))),
               SchemaError);
  EXPECT_THROW(derive_baseline(Schema::rec_ref()), SchemaError);
  EXPECT_THROW(derive_staged(Schema::sum({})), SchemaError);
  EXPECT_NO_THROW(validate(bst_schema()));
}

TEST(Derive, JsonRoundTrip) {
  for (const Schema& schema : {bst_schema(), stlc_term_schema()}) {
    const std::string text = schema_to_json(schema);
    EXPECT_EQ(schema_to_json(parse_schema_json(text)), text);
  }
  const Schema s = parse_schema_json(R"({"kind": "rec", "body": {"kind": "sum", "variants": [
      {"tag": "Leaf", "weight": 1},
      {"tag": "Node", "weight": "size", "body": {"kind": "product", "fields": [
        {"kind": "recref"}, {"kind": "int", "lo": 0, "hi": 100},
        {"kind": "int", "lo": 0, "hi": 100}, {"kind": "recref"}]}}]}})");
  EXPECT_EQ(schema_to_json(s), schema_to_json(bst_schema()));
}

TEST(Derive, JsonErrorsAreSchemaErrors) {
  EXPECT_THROW(parse_schema_json("{"), SchemaError);
  EXPECT_THROW(parse_schema_json(R"({"kind": "tree"})"), SchemaError);
  EXPECT_THROW(parse_schema_json(R"({"kind": "sum", "variants": [{"tag": "A", "weight": "big"}]})"),
               SchemaError);
}

}  // namespace
}  // namespace stagegen::derive
