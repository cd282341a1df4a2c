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

// Staged generator combinators.
//
// A staged generator is a stage-one function from symbolic (size, seed) to
// code: running it does not sample anything, it emits an A-normal-form
// program through a Builder. Size and seed are dynamic; the generator's
// structure is static and is specialized away. `compile` runs stage one once
// and lowers the resulting program to an Executable.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stagegen/errors.hpp"
#include "stagegen/exec.hpp"
#include "stagegen/ir.hpp"
#include "stagegen/splitmix.hpp"
#include "stagegen/value.hpp"

namespace stagegen::staged {

using ir::CodeVal;

struct CompileOptions {
  // Effects name themselves with a let. Switching this off reproduces the
  // naive splice that duplicates effects; only the harness's self-check
  // uses it.
  bool let_insertion = true;
  // Fold all-constant weight totals at stage one.
  bool fold_constants = true;
  // Reject programs that fail ir::lint.
  bool lint = true;
};

// Accumulates pending let bindings for the block currently being emitted
// and the definitions emitted so far. The rest of the block is the implicit
// continuation of each let.
class Builder {
 public:
  explicit Builder(CompileOptions options = {});

  const CompileOptions& options() const { return options_; }

  ir::VarId fresh() { return next_var_++; }

  // Names an effect: appends `let v = effect` and returns v. With
  // let-insertion off, samples are returned unbound instead.
  CodeVal let_insert(ir::Expr effect);

  void open_block();
  ir::Block close_block(CodeVal result);

  // Emits the definition registered under `key` on first use. `emit`
  // receives the symbolic size, seed and parameter variables and returns
  // the body's result.
  using EmitBody = std::function<CodeVal(const CodeVal& size, const CodeVal& seed,
                                         const std::vector<CodeVal>& params)>;
  ir::DefId def_for(std::shared_ptr<const void> key, const std::string& name,
                    std::size_t arity, const EmitBody& emit);

  // True while the definition registered under `key` is being emitted.
  bool active(const void* key) const;
  ir::DefId def_id(const void* key) const { return def_ids_.at(key); }

  ir::Program finish(ir::DefId entry);

 private:
  struct Frame {
    std::vector<std::vector<ir::Let>> blocks;
  };

  CompileOptions options_;
  ir::VarId next_var_ = 0;
  std::vector<Frame> frames_;
  std::vector<ir::Def> defs_;
  std::unordered_map<const void*, ir::DefId> def_ids_;
  std::vector<const void*> active_;
  std::vector<std::shared_ptr<const void>> keys_;
};

template <class A>
class Gen {
 public:
  using value_type = A;
  using Fn = std::function<CodeVal(const CodeVal& size, const CodeVal& seed,
                                   Builder& builder)>;

  explicit Gen(Fn fn) : fn_(std::make_shared<const Fn>(std::move(fn))) {}

  CodeVal operator()(const CodeVal& size, const CodeVal& seed,
                     Builder& builder) const {
    return (*fn_)(size, seed, builder);
  }

 private:
  std::shared_ptr<const Fn> fn_;
};

template <class A>
Gen<A> pure(CodeVal x) {
  return Gen<A>([x = std::move(x)](const CodeVal&, const CodeVal&, Builder&) {
    return x;
  });
}

// Runs g, hands its (already named) result to k. Pure results flow through
// unbound, so bind(pure(c), k) emits exactly what k(c) emits.
template <class A, class K>
auto bind(Gen<A> g, K k) -> std::invoke_result_t<K, CodeVal> {
  using GB = std::invoke_result_t<K, CodeVal>;
  return GB([g = std::move(g), k = std::move(k)](
                const CodeVal& size, const CodeVal& seed, Builder& b) {
    CodeVal a = g(size, seed, b);
    return k(std::move(a))(size, seed, b);
  });
}

Gen<std::int64_t> int_range(CodeVal lo, CodeVal hi);
Gen<bool> boolean();
Gen<std::int64_t> size();

template <class A>
Gen<A> with_size(CodeVal n, Gen<A> g) {
  return Gen<A>([n = std::move(n), g = std::move(g)](
                    const CodeVal&, const CodeVal& seed, Builder& b) {
    if (n.is_const_int()) {
      if (n.int_value() < 0) {
        throw ContractError("with_size: negative size " +
                            std::to_string(n.int_value()));
      }
      return g(n, seed, b);
    }
    const CodeVal checked =
        b.let_insert(ir::Expr{ir::Pure{CodeVal::prim(ir::PrimOp::kCheckSize, {n})}});
    return g(checked, seed, b);
  });
}

namespace detail {
// Emits the total, the draw and the comparison chain; returns the bound
// result. `bodies` are emitted in order inside their own blocks.
CodeVal emit_weighted_union(
    const std::vector<CodeVal>& weights,
    const std::vector<std::function<CodeVal(Builder&)>>& bodies, Builder& b);
CodeVal emit_if(const CodeVal& cond, const std::function<CodeVal(Builder&)>& then_body,
                const std::function<CodeVal(Builder&)>& else_body, Builder& b);
}  // namespace detail

template <class A>
using Choices = std::vector<std::pair<CodeVal, Gen<A>>>;

// Specializes the choice to its stage-one list of branches: no table exists
// at run time, only a draw and a chain of comparisons.
template <class A>
Gen<A> weighted_union(Choices<A> choices) {
  if (choices.empty()) throw CompileError("weighted_union: no choices");
  return Gen<A>([choices = std::move(choices)](
                    const CodeVal& size, const CodeVal& seed, Builder& b) {
    std::vector<CodeVal> weights;
    std::vector<std::function<CodeVal(Builder&)>> bodies;
    for (const auto& [w, g] : choices) {
      weights.push_back(w);
      bodies.push_back([&size, &seed, &g = g](Builder& inner) {
        return g(size, seed, inner);
      });
    }
    return detail::emit_weighted_union(weights, bodies, b);
  });
}

// Run-time conditional on a pure boolean. A constant condition selects its
// branch at stage one.
template <class A>
Gen<A> cond(CodeVal c, Gen<A> then_gen, Gen<A> else_gen) {
  return Gen<A>([c = std::move(c), t = std::move(then_gen),
                 e = std::move(else_gen)](const CodeVal& size,
                                          const CodeVal& seed, Builder& b) {
    if (c.kind() == CodeVal::Kind::kBool) {
      return c.bool_value() ? t(size, seed, b) : e(size, seed, b);
    }
    return detail::emit_if(
        c, [&](Builder& inner) { return t(size, seed, inner); },
        [&](Builder& inner) { return e(size, seed, inner); }, b);
  });
}

namespace detail {
struct FixInfo {
  std::string name;
  std::size_t arity;
};
}  // namespace detail

// Opaque recursion handle. Only valid while its fixed point's definition is
// being emitted; any other use is an "escaped handle" compile error.
template <class A>
class Handle {
 public:
  explicit Handle(std::weak_ptr<const detail::FixInfo> info)
      : info_(std::move(info)) {}
  const std::weak_ptr<const detail::FixInfo>& info() const { return info_; }

 private:
  std::weak_ptr<const detail::FixInfo> info_;
};

namespace detail {
ir::DefId resolve_handle(const std::weak_ptr<const FixInfo>& info,
                         std::size_t nargs, const Builder& b);
}  // namespace detail

// A let-bound call to the definition behind `h`, at the current size.
template <class A>
Gen<A> recurse(Handle<A> h, std::vector<CodeVal> args = {}) {
  return Gen<A>([h = std::move(h), args = std::move(args)](
                    const CodeVal& size, const CodeVal&, Builder& b) {
    const ir::DefId def = detail::resolve_handle(h.info(), args.size(), b);
    return b.let_insert(ir::Expr{ir::Call{def, size, args}});
  });
}

// Parameterized fixed point: `f(handle, params)` is the body of one named
// definition taking `init.size()` extra parameters. Stage one runs `f`
// exactly once per compilation, however many call sites reach it.
template <class A, class F>
Gen<A> fixed_point_param(F f, std::vector<CodeVal> init,
                         std::string name = "fix") {
  auto info = std::make_shared<const detail::FixInfo>(
      detail::FixInfo{std::move(name), init.size()});
  return Gen<A>([info, f = std::move(f), init = std::move(init)](
                    const CodeVal& size, const CodeVal&, Builder& b) {
    const ir::DefId def = b.def_for(
        info, info->name, info->arity,
        [&](const CodeVal& inner_size, const CodeVal& inner_seed,
            const std::vector<CodeVal>& params) {
          const Gen<A> body = f(Handle<A>(info), params);
          return body(inner_size, inner_seed, b);
        });
    return b.let_insert(ir::Expr{ir::Call{def, size, init}});
  });
}

template <class A, class F>
Gen<A> fixed_point(F f, std::string name = "fix") {
  return fixed_point_param<A>(
      [f = std::move(f)](Handle<A> h, const std::vector<CodeVal>&) {
        return f(std::move(h));
      },
      {}, std::move(name));
}

// Result of compilation: the emitted program and its lowered form. Holds
// no staged combinators.
template <class A>
class CompiledGen {
 public:
  CompiledGen(std::shared_ptr<const ir::Program> program,
              std::shared_ptr<const Executable> exe)
      : program_(std::move(program)), exe_(std::move(exe)) {}

  A operator()(std::int64_t size, Seed& seed) const {
    return ValueTraits<A>::from_value(exe_->run(size, seed));
  }

  const ir::Program& program() const { return *program_; }
  const Executable& executable() const { return *exe_; }
  std::string ir_text() const { return ir::print(*program_); }

 private:
  std::shared_ptr<const ir::Program> program_;
  std::shared_ptr<const Executable> exe_;
};

// Runs stage one with symbolic size and seed parameters and returns the
// emitted program. Throws CompileError on lint failures.
ir::Program emit_program(
    const std::function<CodeVal(const CodeVal&, const CodeVal&, Builder&)>& stage_one,
    const CompileOptions& options);

template <class A>
CompiledGen<A> compile(const Gen<A>& g, const CompileOptions& options = {}) {
  auto program = std::make_shared<const ir::Program>(emit_program(
      [&g](const CodeVal& size, const CodeVal& seed, Builder& b) {
        return g(size, seed, b);
      },
      options));
  auto exe = Executable::lower(*program);
  return CompiledGen<A>(std::move(program), std::move(exe));
}

template <class A>
A run(const CompiledGen<A>& g, std::int64_t size, Seed& seed) {
  return g(size, seed);
}

}  // namespace stagegen::staged
