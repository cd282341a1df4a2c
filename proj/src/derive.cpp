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

#include "stagegen/derive.hpp"

#include <memory>

#include <nlohmann/json.hpp>

#include "stagegen/errors.hpp"

namespace stagegen::derive {

Schema Schema::integer(std::int64_t lo, std::int64_t hi) {
  Schema s;
  s.kind = Kind::kInt;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Schema Schema::boolean() { return Schema{}; }

Schema Schema::product(std::vector<Schema> fields) {
  Schema s;
  s.kind = Kind::kProduct;
  s.children = std::move(fields);
  return s;
}

Schema Schema::sum(std::vector<Variant> variants) {
  Schema s;
  s.kind = Kind::kSum;
  s.variants = std::move(variants);
  return s;
}

Schema Schema::rec(Schema body) {
  Schema s;
  s.kind = Kind::kRec;
  s.children.push_back(std::move(body));
  return s;
}

Schema Schema::rec_ref() {
  Schema s;
  s.kind = Kind::kRecRef;
  return s;
}

namespace {

// RecRefs not closed by a Rec inside `s`.
std::size_t free_rec_refs(const Schema& s) {
  switch (s.kind) {
    case Schema::Kind::kRecRef:
      return 1;
    case Schema::Kind::kRec:
      return 0;
    case Schema::Kind::kSum: {
      std::size_t n = 0;
      for (const auto& v : s.variants) n += free_rec_refs(v.body);
      return n;
    }
    default: {
      std::size_t n = 0;
      for (const auto& c : s.children) n += free_rec_refs(c);
      return n;
    }
  }
}

void check(const Schema& s, int rec_depth) {
  switch (s.kind) {
    case Schema::Kind::kInt:
      if (s.lo > s.hi) throw SchemaError("int schema with lo > hi");
      return;
    case Schema::Kind::kBool:
      return;
    case Schema::Kind::kRecRef:
      if (rec_depth == 0) throw SchemaError("RecRef outside of a Rec");
      return;
    case Schema::Kind::kRec:
      if (s.children.size() != 1) throw SchemaError("Rec needs exactly one body");
      check(s.children[0], rec_depth + 1);
      return;
    case Schema::Kind::kProduct:
      for (const auto& c : s.children) check(c, rec_depth);
      return;
    case Schema::Kind::kSum: {
      if (s.variants.empty()) throw SchemaError("Sum with no variants");
      bool has_base = false;
      for (const auto& v : s.variants) {
        const bool recursive = free_rec_refs(v.body) > 0;
        if (v.weight.kind == Weight::Kind::kConst) {
          if (v.weight.value < 0) {
            throw SchemaError("variant " + v.tag + " has a negative weight");
          }
          if (recursive && v.weight.value > 0) {
            throw SchemaError("recursive variant " + v.tag +
                              " needs a size-dependent weight");
          }
          if (!recursive && v.weight.value > 0) has_base = true;
        }
        check(v.body, rec_depth);
      }
      if (!has_base) {
        throw SchemaError(
            "Sum needs a positively weighted variant without recursion");
      }
      return;
    }
  }
}

bool needs_size(const Schema& sum) {
  for (const auto& v : sum.variants) {
    if (v.weight.kind == Weight::Kind::kCurrentSize) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Baseline derivation. Runs at generation time inside bind continuations,
// like the code a deriver would emit for a monadic library.

namespace bl = stagegen::baseline;

struct BaselineEnv {
  std::shared_ptr<const std::vector<bl::Gen<Value>>> selves;
  std::int64_t size = 0;
  bool has_size = false;
};

bl::Gen<Value> go_baseline(const std::shared_ptr<const Schema>& root,
                           const Schema& s, const BaselineEnv& env);

// Binds `fields[i..]` left to right, then finishes with `finish(values)`.
bl::Gen<Value> seq_baseline(const std::shared_ptr<const Schema>& root,
                            const std::vector<Schema>& fields, std::size_t i,
                            const BaselineEnv& env, std::vector<Value> acc,
                            std::int32_t tag) {
  if (i == fields.size()) return bl::pure(Value::node(tag, acc));
  return bl::bind(go_baseline(root, fields[i], env),
                  [root, &fields, i, env, acc = std::move(acc), tag](Value v) {
                    std::vector<Value> next;
                    next.reserve(fields.size());
                    next.assign(acc.begin(), acc.end());
                    next.push_back(std::move(v));
                    return seq_baseline(root, fields, i + 1, env, std::move(next), tag);
                  });
}

bl::Gen<Value> variant_baseline(const std::shared_ptr<const Schema>& root,
                                const Variant& v, std::int32_t tag,
                                const BaselineEnv& env) {
  if (v.body.kind == Schema::Kind::kProduct) {
    return seq_baseline(root, v.body.children, 0, env, {}, tag);
  }
  return bl::bind(go_baseline(root, v.body, env), [tag](Value x) {
    return bl::pure(Value::node(tag, {std::move(x)}));
  });
}

bl::Gen<Value> sum_baseline(const std::shared_ptr<const Schema>& root,
                            const Schema& s, const BaselineEnv& env) {
  bl::Choices<Value> choices;
  for (std::size_t i = 0; i < s.variants.size(); ++i) {
    const Variant& v = s.variants[i];
    const std::int64_t w =
        v.weight.kind == Weight::Kind::kConst ? v.weight.value : env.size;
    choices.emplace_back(w, variant_baseline(root, v, static_cast<std::int32_t>(i), env));
  }
  return bl::weighted_union(std::move(choices));
}

bl::Gen<Value> go_baseline(const std::shared_ptr<const Schema>& root,
                           const Schema& s, const BaselineEnv& env) {
  switch (s.kind) {
    case Schema::Kind::kInt:
      return bl::Gen<Value>([lo = s.lo, hi = s.hi](std::int64_t, Seed& seed) {
        return Value::integer(seed.int_in_range(lo, hi));
      });
    case Schema::Kind::kBool:
      return bl::Gen<Value>([](std::int64_t, Seed& seed) {
        return Value::boolean(seed.int_in_range(0, 1) != 0);
      });
    case Schema::Kind::kProduct:
      return seq_baseline(root, s.children, 0, env, {}, kTupleTag);
    case Schema::Kind::kSum:
      if (needs_size(s) && !env.has_size) {
        return bl::bind(bl::size(), [root, &s, env](std::int64_t n) {
          BaselineEnv inner = env;
          inner.size = n;
          inner.has_size = true;
          return sum_baseline(root, s, inner);
        });
      }
      return sum_baseline(root, s, env);
    case Schema::Kind::kRec:
      return bl::fixed_point<Value>([root, &s, env](bl::Gen<Value> self) {
        return bl::bind(bl::size(), [root, &s, env, self](std::int64_t n) {
          BaselineEnv inner = env;
          auto selves = env.selves ? std::make_shared<std::vector<bl::Gen<Value>>>(*env.selves)
                                   : std::make_shared<std::vector<bl::Gen<Value>>>();
          selves->push_back(self);
          inner.selves = std::move(selves);
          inner.size = n;
          inner.has_size = true;
          return go_baseline(root, s.children[0], inner);
        });
      });
    case Schema::Kind::kRecRef:
      return bl::with_size(env.size / 2, env.selves->back());
  }
  throw SchemaError("unknown schema kind");
}

// ---------------------------------------------------------------------------
// Staged derivation: the same recursion, over staged combinators, run once
// at stage one.

namespace st = stagegen::staged;
using ir::CodeVal;

struct StagedEnv {
  std::vector<st::Handle<Value>> selves;
  CodeVal size;
  bool has_size = false;
};

template <class A>
st::Gen<Value> as_value(st::Gen<A> g) {
  return st::Gen<Value>([g = std::move(g)](const CodeVal& size, const CodeVal& seed,
                                            st::Builder& b) { return g(size, seed, b); });
}

st::Gen<Value> go_staged(const std::shared_ptr<const Schema>& root,
                         const Schema& s, const StagedEnv& env);

st::Gen<Value> seq_staged(const std::shared_ptr<const Schema>& root,
                          const std::vector<Schema>& fields, std::size_t i,
                          const StagedEnv& env, std::vector<CodeVal> acc,
                          std::int32_t tag) {
  if (i == fields.size()) {
    return st::pure<Value>(CodeVal::construct(tag, std::move(acc)));
  }
  return st::bind(go_staged(root, fields[i], env),
                  [root, &fields, i, env, acc = std::move(acc), tag](CodeVal v) {
                    std::vector<CodeVal> next = acc;
                    next.push_back(std::move(v));
                    return seq_staged(root, fields, i + 1, env, std::move(next), tag);
                  });
}

st::Gen<Value> variant_staged(const std::shared_ptr<const Schema>& root,
                              const Variant& v, std::int32_t tag,
                              const StagedEnv& env) {
  if (v.body.kind == Schema::Kind::kProduct) {
    return seq_staged(root, v.body.children, 0, env, {}, tag);
  }
  return st::bind(go_staged(root, v.body, env), [tag](CodeVal x) {
    return st::pure<Value>(CodeVal::construct(tag, {std::move(x)}));
  });
}

st::Gen<Value> sum_staged(const std::shared_ptr<const Schema>& root,
                          const Schema& s, const StagedEnv& env) {
  st::Choices<Value> choices;
  for (std::size_t i = 0; i < s.variants.size(); ++i) {
    const Variant& v = s.variants[i];
    CodeVal w = v.weight.kind == Weight::Kind::kConst ? ir::lit(v.weight.value)
                                                      : env.size;
    choices.emplace_back(std::move(w),
                         variant_staged(root, v, static_cast<std::int32_t>(i), env));
  }
  return st::weighted_union(std::move(choices));
}

st::Gen<Value> go_staged(const std::shared_ptr<const Schema>& root,
                         const Schema& s, const StagedEnv& env) {
  switch (s.kind) {
    case Schema::Kind::kInt:
      return as_value(st::int_range(ir::lit(s.lo), ir::lit(s.hi)));
    case Schema::Kind::kBool:
      return as_value(st::boolean());
    case Schema::Kind::kProduct:
      return seq_staged(root, s.children, 0, env, {}, kTupleTag);
    case Schema::Kind::kSum:
      if (needs_size(s) && !env.has_size) {
        return st::bind(st::size(), [root, &s, env](CodeVal n) {
          StagedEnv inner = env;
          inner.size = std::move(n);
          inner.has_size = true;
          return sum_staged(root, s, inner);
        });
      }
      return sum_staged(root, s, env);
    case Schema::Kind::kRec:
      return st::fixed_point<Value>(
          [root, &s, env](st::Handle<Value> self) {
            return st::bind(st::size(), [root, &s, env, self](CodeVal n) {
              StagedEnv inner = env;
              inner.selves.push_back(self);
              inner.size = std::move(n);
              inner.has_size = true;
              return go_staged(root, s.children[0], inner);
            });
          },
          "rec");
    case Schema::Kind::kRecRef:
      return st::with_size(env.size / ir::lit(2), st::recurse(env.selves.back()));
  }
  throw SchemaError("unknown schema kind");
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

Schema from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw SchemaError("schema node must be an object with a \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "int") {
    return Schema::integer(j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>());
  }
  if (kind == "bool") return Schema::boolean();
  if (kind == "recref") return Schema::rec_ref();
  if (kind == "rec") return Schema::rec(from_json(j.at("body")));
  if (kind == "product") {
    std::vector<Schema> fields;
    for (const auto& f : j.value("fields", json::array())) fields.push_back(from_json(f));
    return Schema::product(std::move(fields));
  }
  if (kind == "sum") {
    std::vector<Variant> variants;
    for (const auto& v : j.at("variants")) {
      Variant out;
      out.tag = v.at("tag").get<std::string>();
      const json& w = v.at("weight");
      if (w.is_string()) {
        if (w.get<std::string>() != "size") {
          throw SchemaError("weight must be an integer or \"size\"");
        }
        out.weight = Weight::current_size();
      } else {
        out.weight = Weight::constant(w.get<std::int64_t>());
      }
      out.body = v.contains("body") ? from_json(v.at("body")) : Schema::product({});
      variants.push_back(std::move(out));
    }
    return Schema::sum(std::move(variants));
  }
  throw SchemaError("unknown schema kind \"" + kind + "\"");
}

json to_json(const Schema& s) {
  switch (s.kind) {
    case Schema::Kind::kInt:
      return {{"kind", "int"}, {"lo", s.lo}, {"hi", s.hi}};
    case Schema::Kind::kBool:
      return {{"kind", "bool"}};
    case Schema::Kind::kRecRef:
      return {{"kind", "recref"}};
    case Schema::Kind::kRec:
      return {{"kind", "rec"}, {"body", to_json(s.children[0])}};
    case Schema::Kind::kProduct: {
      json fields = json::array();
      for (const auto& c : s.children) fields.push_back(to_json(c));
      return {{"kind", "product"}, {"fields", fields}};
    }
    case Schema::Kind::kSum: {
      json variants = json::array();
      for (const auto& v : s.variants) {
        json w = v.weight.kind == Weight::Kind::kConst ? json(v.weight.value) : json("size");
        variants.push_back({{"tag", v.tag}, {"weight", w}, {"body", to_json(v.body)}});
      }
      return {{"kind", "sum"}, {"variants", variants}};
    }
  }
  return {};
}

}  // namespace

void validate(const Schema& schema) { check(schema, 0); }

baseline::Gen<Value> derive_baseline(const Schema& schema) {
  validate(schema);
  auto root = std::make_shared<const Schema>(schema);
  bl::Gen<Value> g = go_baseline(root, *root, BaselineEnv{});
  // Keep the schema alive for the generator's lifetime: continuations hold
  // references into it.
  return bl::Gen<Value>([root, g](std::int64_t size, Seed& seed) { return g(size, seed); });
}

staged::Gen<Value> derive_staged(const Schema& schema) {
  validate(schema);
  auto root = std::make_shared<const Schema>(schema);
  st::Gen<Value> g = go_staged(root, *root, StagedEnv{});
  return st::Gen<Value>([root, g](const CodeVal& size, const CodeVal& seed,
                                  st::Builder& b) { return g(size, seed, b); });
}

Schema parse_schema_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid schema JSON: ") + e.what());
  }
  try {
    Schema s = from_json(j);
    validate(s);
    return s;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid schema: ") + e.what());
  }
}

std::string schema_to_json(const Schema& schema) { return to_json(schema).dump(); }

Schema bst_schema() {
  return Schema::rec(Schema::sum({
      {"Leaf", Weight::constant(1), Schema::product({})},
      {"Node", Weight::current_size(),
       Schema::product({Schema::rec_ref(), Schema::integer(0, 100),
                        Schema::integer(0, 100), Schema::rec_ref()})},
  }));
}

Schema stlc_type_schema() {
  return Schema::rec(Schema::sum({
      {"Base", Weight::constant(1), Schema::product({})},
      {"Arrow", Weight::current_size(),
       Schema::product({Schema::rec_ref(), Schema::rec_ref()})},
  }));
}

Schema stlc_term_schema() {
  return Schema::rec(Schema::sum({
      {"Var", Weight::constant(1), Schema::integer(0, 3)},
      {"Lam", Weight::current_size(),
       Schema::product({stlc_type_schema(), Schema::rec_ref()})},
      {"App", Weight::current_size(),
       Schema::product({Schema::rec_ref(), Schema::rec_ref()})},
      {"Const", Weight::constant(1), Schema::integer(0, 100)},
  }));
}

}  // namespace stagegen::derive
