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

// A-normal-form intermediate program emitted by the staged backend.
//
// Effects (sampling, recursive calls, weighted choice, conditionals) only
// appear on the right-hand side of a `let`, so every effect is named once and
// a variable can be used any number of times without repeating it. Pure
// values (constants, variables, constructors, primitive applications) are
// CodeVal trees and may be duplicated freely.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stagegen/value.hpp"

namespace stagegen::ir {

using VarId = std::uint32_t;
using DefId = std::uint32_t;

enum class PrimOp : std::uint8_t {
  kAdd,
  kSub,
  kMul,
  kDiv,  // truncating; divisor must be nonzero
  kEq,
  kLt,
  kLe,
  kNot,
  kAnd,
  kOr,
  kSelect,  // select(c, a, b) = c ? a : b
  kToBool,  // nonzero integer -> true
  kField,   // field(node, i)
  kTag,     // tag(node)
  // total(w...) validates w_i >= 0 and sum >= 1, returns the sum. Throws
  // GenerationError("empty distribution") on a zero sum.
  kWeightTotal,
  // check_size(n) returns n, throws ContractError when n < 0.
  kCheckSize,
};

const char* prim_name(PrimOp op);

// A pure host function callable from emitted code.
struct ExternFn {
  const char* name;
  std::size_t arity;
  Value (*fn)(std::span<const Value> args);
};

struct Expr;

class CodeVal {
 public:
  enum class Kind : std::uint8_t {
    kInt,
    kBool,
    kVar,
    kConstruct,
    kPrim,
    kExtern,
    // An effect spliced without a binder. Only produced when let-insertion
    // is switched off; the linter rejects it.
    kInline,
  };

  CodeVal();  // ConstInt 0

  static CodeVal const_int(std::int64_t v);
  static CodeVal const_bool(bool b);
  static CodeVal var(VarId id);
  static CodeVal construct(std::int32_t tag, std::vector<CodeVal> fields);
  static CodeVal tuple(std::vector<CodeVal> fields) {
    return construct(kTupleTag, std::move(fields));
  }
  // Folds to a constant when every argument is constant and the operation
  // cannot fail.
  static CodeVal prim(PrimOp op, std::vector<CodeVal> args);
  static CodeVal call_extern(const ExternFn* fn, std::vector<CodeVal> args);
  static CodeVal inline_effect(Expr effect);

  Kind kind() const;
  bool is_const_int() const { return kind() == Kind::kInt; }
  bool is_const() const { return kind() == Kind::kInt || kind() == Kind::kBool; }
  std::int64_t int_value() const;
  bool bool_value() const;
  VarId var_id() const;
  std::int32_t tag() const;
  PrimOp prim_op() const;
  const ExternFn* extern_fn() const;
  const std::vector<CodeVal>& args() const;
  const Expr& effect() const;

 private:
  struct Node;
  explicit CodeVal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Convenience builders for arithmetic on code.
inline CodeVal operator+(CodeVal a, CodeVal b) {
  return CodeVal::prim(PrimOp::kAdd, {std::move(a), std::move(b)});
}
inline CodeVal operator-(CodeVal a, CodeVal b) {
  return CodeVal::prim(PrimOp::kSub, {std::move(a), std::move(b)});
}
inline CodeVal operator/(CodeVal a, CodeVal b) {
  return CodeVal::prim(PrimOp::kDiv, {std::move(a), std::move(b)});
}
inline CodeVal lit(std::int64_t v) { return CodeVal::const_int(v); }

struct Block;

struct Sample {
  CodeVal lo;
  CodeVal hi;
};

struct Call {
  DefId def;
  CodeVal size;
  std::vector<CodeVal> args;
};

// Comparison chain over a drawn r: branch i is taken when r < weights[i]
// after subtracting the weights of branches 0..i-1.
struct Choose {
  CodeVal r;
  std::vector<CodeVal> weights;
  std::vector<Block> bodies;
};

struct If {
  CodeVal cond;
  std::vector<Block> arms;  // [then, else]
};

// A pure computation that must run exactly where it is bound (checks).
struct Pure {
  CodeVal value;
};

struct Expr {
  std::variant<Sample, Call, Choose, If, Pure> node;
};

struct Let {
  VarId var;
  Expr expr;
};

struct Block {
  std::vector<Let> lets;
  CodeVal result;
};

struct Def {
  std::string name;
  VarId size_param;
  VarId seed_param;
  std::vector<VarId> params;
  Block body;
};

struct Program {
  std::vector<Def> defs;
  DefId entry = 0;
  VarId var_count = 0;
};

struct Stats {
  std::size_t lets = 0;
  std::size_t samples = 0;
  std::size_t calls = 0;
  std::size_t chooses = 0;
  std::size_t ifs = 0;
  std::size_t prims = 0;
  std::size_t inlined_effects = 0;
};

Stats stats(const Program& program);

// Checks well-scopedness (each variable bound once and every use dominated
// by its binder within the same definition), effect linearity (no inline
// effects), call arity and def references. Returns the list of problems,
// empty when the program is well formed.
std::vector<std::string> lint(const Program& program);

// Stable textual form: one let per line, `choose`/`if`/`call` keywords,
// variables renumbered in binding order so alpha-equivalent programs print
// identically.
std::string print(const Program& program);

}  // namespace stagegen::ir
