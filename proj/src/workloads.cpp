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

#include "stagegen/workloads.hpp"

#include "stagegen/bst.hpp"
#include "stagegen/derive.hpp"
#include "stagegen/stlc.hpp"

namespace stagegen::workloads {

namespace bl = baseline;
namespace st = staged;
using ir::CodeVal;
using ir::lit;
using ir::PrimOp;

namespace {

CodeVal eq(CodeVal a, CodeVal b) { return CodeVal::prim(PrimOp::kEq, {std::move(a), std::move(b)}); }
CodeVal select(CodeVal c, CodeVal a, CodeVal b) {
  return CodeVal::prim(PrimOp::kSelect, {std::move(c), std::move(a), std::move(b)});
}

Value insert_fn(std::span<const Value> a) {
  return bst::insert(a[0].as_int(), a[1].as_int(), a[2]);
}
Value count_vars_fn(std::span<const Value> a) {
  return Value::integer(stlc::count_vars(a[0], a[1]));
}
Value nth_var_fn(std::span<const Value> a) {
  return Value::integer(stlc::nth_var(a[0], a[1], a[2].as_int()));
}

}  // namespace

const ir::ExternFn kInsertExtern{"insert", 3, &insert_fn};
const ir::ExternFn kCountVarsExtern{"count_vars", 2, &count_vars_fn};
const ir::ExternFn kNthVarExtern{"nth_var", 3, &nth_var_fn};

// ---------------------------------------------------------------------------
// bool_list

bl::Gen<Value> bool_list_baseline() {
  return bl::bind(bl::size(), [](std::int64_t n) {
    return bl::fixed_point_param<std::int64_t, Value>(
        [](const bl::Recur<std::int64_t, Value>& rec, std::int64_t k) {
          if (k == 0) return bl::pure(Value::node(kNil, {}));
          return bl::bind(bl::boolean(), [rec, k](bool b) {
            return bl::bind(rec(k - 1), [b](Value tl) {
              return bl::pure(Value::node(kCons, {Value::boolean(b), std::move(tl)}));
            });
          });
        },
        n);
  });
}

st::Gen<Value> bool_list_staged() {
  return st::bind(st::size(), [](CodeVal n) {
    return st::fixed_point_param<Value>(
        [](st::Handle<Value> h, const std::vector<CodeVal>& p) {
          const CodeVal k = p[0];
          return st::cond<Value>(
              eq(k, lit(0)), st::pure<Value>(CodeVal::construct(kNil, {})),
              st::bind(st::boolean(), [h, k](CodeVal b) {
                return st::bind(st::recurse(h, {k - lit(1)}), [b](CodeVal tl) {
                  return st::pure<Value>(CodeVal::construct(kCons, {b, tl}));
                });
              }));
        },
        {n}, "list");
  });
}

// ---------------------------------------------------------------------------
// bst_insert

bl::Gen<Value> bst_insert_baseline() {
  using P = std::pair<std::int64_t, Value>;
  return bl::bind(bl::size(), [](std::int64_t n) {
    return bl::fixed_point_param<P, Value>(
        [](const bl::Recur<P, Value>& rec, const P& p) {
          if (p.first == 0) return bl::pure(p.second);
          return bl::bind(bl::int_range(0, 100), [rec, p](std::int64_t k) {
            return bl::bind(bl::int_range(0, 100), [rec, p, k](std::int64_t v) {
              return rec(P{p.first - 1, bst::insert(k, v, p.second)});
            });
          });
        },
        P{n, bst::leaf()});
  });
}

st::Gen<Value> bst_insert_staged() {
  return st::bind(st::size(), [](CodeVal n) {
    return st::fixed_point_param<Value>(
        [](st::Handle<Value> h, const std::vector<CodeVal>& p) {
          const CodeVal count = p[0];
          const CodeVal tree = p[1];
          return st::cond<Value>(
              eq(count, lit(0)), st::pure<Value>(tree),
              st::bind(st::int_range(lit(0), lit(100)), [h, count, tree](CodeVal k) {
                return st::bind(st::int_range(lit(0), lit(100)),
                                [h, count, tree, k](CodeVal v) {
                                  return st::recurse(
                                      h, {count - lit(1),
                                          CodeVal::call_extern(&kInsertExtern, {k, v, tree})});
                                });
              }));
        },
        {n, CodeVal::construct(bst::kLeaf, {})}, "insert_loop");
  });
}

// ---------------------------------------------------------------------------
// bst_single_pass: key, value, then both subtrees at half the size.

bl::Gen<Value> bst_single_pass_baseline() {
  return bl::fixed_point<Value>([](bl::Gen<Value> self) {
    return bl::bind(bl::size(), [self](std::int64_t n) {
      bl::Choices<Value> choices;
      choices.emplace_back(1, bl::pure(bst::leaf()));
      choices.emplace_back(
          n, bl::bind(bl::int_range(0, 100), [self, n](std::int64_t k) {
            return bl::bind(bl::int_range(0, 100), [self, n, k](std::int64_t v) {
              return bl::bind(bl::with_size(n / 2, self), [self, n, k, v](Value l) {
                return bl::bind(bl::with_size(n / 2, self), [k, v, l](Value r) {
                  return bl::pure(bst::node(l, k, v, std::move(r)));
                });
              });
            });
          }));
      return bl::weighted_union(std::move(choices));
    });
  });
}

st::Gen<Value> bst_single_pass_staged() {
  return st::fixed_point<Value>(
      [](st::Handle<Value> self) {
        return st::bind(st::size(), [self](CodeVal n) {
          st::Choices<Value> choices;
          choices.emplace_back(lit(1), st::pure<Value>(CodeVal::construct(bst::kLeaf, {})));
          choices.emplace_back(
              n, st::bind(st::int_range(lit(0), lit(100)), [self, n](CodeVal k) {
                return st::bind(st::int_range(lit(0), lit(100)), [self, n, k](CodeVal v) {
                  return st::bind(
                      st::with_size(n / lit(2), st::recurse(self)), [self, n, k, v](CodeVal l) {
                        return st::bind(st::with_size(n / lit(2), st::recurse(self)),
                                        [k, v, l](CodeVal r) {
                                          return st::pure<Value>(
                                              CodeVal::construct(bst::kNode, {l, k, v, r}));
                                        });
                      });
                });
              }));
          return st::weighted_union(std::move(choices));
        });
      },
      "tree");
}

// ---------------------------------------------------------------------------
// Derived generators

bl::Gen<Value> bst_derived_baseline() { return derive::derive_baseline(derive::bst_schema()); }
st::Gen<Value> bst_derived_staged() { return derive::derive_staged(derive::bst_schema()); }
bl::Gen<Value> stlc_derived_baseline() {
  return derive::derive_baseline(derive::stlc_term_schema());
}
st::Gen<Value> stlc_derived_staged() {
  return derive::derive_staged(derive::stlc_term_schema());
}

// ---------------------------------------------------------------------------
// stlc_welltyped: a type of depth at most 2, then a term of that type.

namespace {

// Types of depth at most `depth`: Base 2 : Arrow 1 while depth remains.
bl::Gen<Value> gen_ty_baseline(std::int64_t depth) {
  return bl::fixed_point_param<std::int64_t, Value>(
      [](const bl::Recur<std::int64_t, Value>& rec, std::int64_t d) {
        if (d == 0) return bl::pure(stlc::base());
        bl::Choices<Value> choices;
        choices.emplace_back(2, bl::pure(stlc::base()));
        choices.emplace_back(1, bl::bind(rec(d - 1), [rec, d](Value a) {
                               return bl::bind(rec(d - 1), [a](Value b) {
                                 return bl::pure(stlc::arrow(a, std::move(b)));
                               });
                             }));
        return bl::weighted_union(std::move(choices));
      },
      depth);
}

st::Gen<Value> gen_ty_staged(std::int64_t depth) {
  return st::fixed_point_param<Value>(
      [](st::Handle<Value> h, const std::vector<CodeVal>& p) {
        const CodeVal d = p[0];
        const CodeVal base = CodeVal::construct(stlc::kBase, {});
        st::Choices<Value> choices;
        choices.emplace_back(lit(2), st::pure<Value>(base));
        choices.emplace_back(lit(1), st::bind(st::recurse(h, {d - lit(1)}), [h, d](CodeVal a) {
                               return st::bind(st::recurse(h, {d - lit(1)}), [a](CodeVal b) {
                                 return st::pure<Value>(
                                     CodeVal::construct(stlc::kArrow, {a, b}));
                               });
                             }));
        return st::cond<Value>(eq(d, lit(0)), st::pure<Value>(base),
                               st::weighted_union(std::move(choices)));
      },
      {lit(depth)}, "ty");
}

using CtxTy = std::pair<Value, Value>;

bl::Gen<Value> gen_term_baseline(Value ty) {
  return bl::fixed_point_param<CtxTy, Value>(
      [](const bl::Recur<CtxTy, Value>& rec, const CtxTy& p) {
        return bl::bind(bl::size(), [rec, p](std::int64_t n) {
          const Value& ctx = p.first;
          const Value& ty = p.second;
          const std::int64_t nvars = stlc::count_vars(ctx, ty);
          const bool is_base = ty.tag() == stlc::kBase;
          bl::Choices<Value> choices;
          choices.emplace_back(
              nvars > 0 ? 2 : 0, bl::bind(bl::int_range(0, nvars - 1), [p](std::int64_t i) {
                return bl::pure(stlc::var(stlc::nth_var(p.first, p.second, i)));
              }));
          choices.emplace_back(is_base ? 1 : 0,
                               bl::bind(bl::int_range(0, 100), [](std::int64_t c) {
                                 return bl::pure(stlc::constant(c));
                               }));
          if (is_base) {
            choices.emplace_back(0, bl::pure(Value()));
          } else {
            const Value dom = ty.field(0);
            choices.emplace_back(
                2, bl::bind(rec(CtxTy{stlc::cons(dom, ctx), ty.field(1)}), [dom](Value b) {
                  return bl::pure(stlc::lam(dom, std::move(b)));
                }));
          }
          choices.emplace_back(n, bl::bind(gen_ty_baseline(1), [rec, p, n](Value a) {
                                 return bl::bind(
                                     bl::with_size(n / 2, rec(CtxTy{p.first, stlc::arrow(a, p.second)})),
                                     [rec, p, n, a](Value f) {
                                       return bl::bind(bl::with_size(n / 2, rec(CtxTy{p.first, a})),
                                                       [f](Value x) {
                                                         return bl::pure(stlc::app(f, std::move(x)));
                                                       });
                                     });
                               }));
          return bl::weighted_union(std::move(choices));
        });
      },
      CtxTy{stlc::nil(), std::move(ty)});
}

st::Gen<Value> gen_term_staged(CodeVal ty) {
  return st::fixed_point_param<Value>(
      [](st::Handle<Value> h, const std::vector<CodeVal>& p) {
        const CodeVal ctx = p[0];
        const CodeVal ty = p[1];
        return st::bind(st::size(), [h, ctx, ty](CodeVal n) {
          const CodeVal nvars = CodeVal::call_extern(&kCountVarsExtern, {ctx, ty});
          const CodeVal is_base = eq(CodeVal::prim(PrimOp::kTag, {ty}), lit(stlc::kBase));
          const CodeVal dom = CodeVal::prim(PrimOp::kField, {ty, lit(0)});
          const CodeVal cod = CodeVal::prim(PrimOp::kField, {ty, lit(1)});
          st::Choices<Value> choices;
          choices.emplace_back(
              select(CodeVal::prim(PrimOp::kLt, {lit(0), nvars}), lit(2), lit(0)),
              st::bind(st::int_range(lit(0), nvars - lit(1)), [ctx, ty](CodeVal i) {
                return st::pure<Value>(CodeVal::construct(
                    stlc::kVar, {CodeVal::call_extern(&kNthVarExtern, {ctx, ty, i})}));
              }));
          choices.emplace_back(select(is_base, lit(1), lit(0)),
                               st::bind(st::int_range(lit(0), lit(100)), [](CodeVal c) {
                                 return st::pure<Value>(CodeVal::construct(stlc::kConst, {c}));
                               }));
          choices.emplace_back(
              select(is_base, lit(0), lit(2)),
              st::bind(st::recurse(h, {CodeVal::construct(stlc::kCons, {dom, ctx}), cod}),
                       [dom](CodeVal b) {
                         return st::pure<Value>(CodeVal::construct(stlc::kLam, {dom, b}));
                       }));
          choices.emplace_back(
              n, st::bind(gen_ty_staged(1), [h, ctx, ty, n](CodeVal a) {
                return st::bind(
                    st::with_size(n / lit(2),
                                  st::recurse(h, {ctx, CodeVal::construct(stlc::kArrow, {a, ty})})),
                    [h, ctx, n, a](CodeVal f) {
                      return st::bind(st::with_size(n / lit(2), st::recurse(h, {ctx, a})),
                                      [f](CodeVal x) {
                                        return st::pure<Value>(
                                            CodeVal::construct(stlc::kApp, {f, x}));
                                      });
                    });
              }));
          return st::weighted_union(std::move(choices));
        });
      },
      {CodeVal::construct(stlc::kNil, {}), std::move(ty)}, "term");
}

}  // namespace

bl::Gen<Value> stlc_welltyped_baseline() {
  return bl::bind(gen_ty_baseline(2), [](Value ty) { return gen_term_baseline(std::move(ty)); });
}

st::Gen<Value> stlc_welltyped_staged() {
  return st::bind(gen_ty_staged(2), [](CodeVal ty) { return gen_term_staged(std::move(ty)); });
}

// ---------------------------------------------------------------------------
// Micro workloads

bl::Gen<Value> int_pair_baseline() {
  return bl::bind(bl::int_range(0, 100), [](std::int64_t x) {
    return bl::pure(Value::tuple({Value::integer(x), Value::integer(x)}));
  });
}

st::Gen<Value> int_pair_staged() {
  return st::bind(st::int_range(lit(0), lit(100)),
                  [](CodeVal x) { return st::pure<Value>(CodeVal::tuple({x, x})); });
}

bl::Gen<Value> grades_baseline() {
  bl::Choices<Value> choices;
  const std::int64_t weights[] = {1, 3, 5, 1};
  for (std::int64_t i = 0; i < 4; ++i) {
    choices.emplace_back(weights[i], bl::pure(Value::integer(i)));
  }
  return bl::weighted_union(std::move(choices));
}

st::Gen<Value> grades_staged() {
  st::Choices<Value> choices;
  const std::int64_t weights[] = {1, 3, 5, 1};
  for (std::int64_t i = 0; i < 4; ++i) {
    choices.emplace_back(lit(weights[i]), st::pure<Value>(lit(i)));
  }
  return st::weighted_union(std::move(choices));
}

bl::Gen<Value> return_baseline() { return bl::pure(Value::integer(0)); }
st::Gen<Value> return_staged() { return st::pure<Value>(lit(0)); }

// ---------------------------------------------------------------------------

const std::vector<Workload>& registry() {
  static const std::vector<Workload> all = {
      {"bool_list", "list of booleans, one coin flip per element", true,
       bool_list_baseline, bool_list_staged},
      {"bst_insert", "BST built by repeated insertion of random bindings", true,
       bst_insert_baseline, bst_insert_staged},
      {"bst_single_pass", "BST-shaped tree built in one recursive pass", true,
       bst_single_pass_baseline, bst_single_pass_staged},
      {"bst_derived", "tree derived from the BST schema", true, bst_derived_baseline,
       bst_derived_staged},
      {"stlc_derived", "lambda term derived from the term schema", true,
       stlc_derived_baseline, stlc_derived_staged},
      {"stlc_welltyped", "well-typed closed lambda term", true, stlc_welltyped_baseline,
       stlc_welltyped_staged},
      {"int_pair", "one integer drawn once and used twice", false, int_pair_baseline,
       int_pair_staged},
      {"grades", "constant-weight choice among four grades", false, grades_baseline,
       grades_staged},
      {"return", "constant generator", false, return_baseline, return_staged},
  };
  return all;
}

const Workload* find(const std::string& id) {
  for (const auto& w : registry()) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

std::vector<std::string> ids() {
  std::vector<std::string> out;
  for (const auto& w : registry()) out.push_back(w.id);
  return out;
}

}  // namespace stagegen::workloads
