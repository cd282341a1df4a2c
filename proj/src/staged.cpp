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

#include "stagegen/staged.hpp"

#include <algorithm>
#include <numeric>

namespace stagegen::staged {

Builder::Builder(CompileOptions options) : options_(options) {}

CodeVal Builder::let_insert(ir::Expr effect) {
  if (!options_.let_insertion && std::holds_alternative<ir::Sample>(effect.node)) {
    return CodeVal::inline_effect(std::move(effect));
  }
  if (frames_.empty() || frames_.back().blocks.empty()) {
    throw CompileError("let_insert outside of a definition");
  }
  const ir::VarId v = fresh();
  frames_.back().blocks.back().push_back(ir::Let{v, std::move(effect)});
  return CodeVal::var(v);
}

void Builder::open_block() { frames_.back().blocks.emplace_back(); }

ir::Block Builder::close_block(CodeVal result) {
  auto& blocks = frames_.back().blocks;
  ir::Block out{std::move(blocks.back()), std::move(result)};
  blocks.pop_back();
  return out;
}

ir::DefId Builder::def_for(std::shared_ptr<const void> owner, const std::string& name,
                           std::size_t arity, const EmitBody& emit) {
  const void* key = owner.get();
  if (auto it = def_ids_.find(key); it != def_ids_.end()) return it->second;
  const auto id = static_cast<ir::DefId>(defs_.size());
  def_ids_.emplace(key, id);
  keys_.push_back(std::move(owner));
  ir::Def def;
  def.name = name + std::to_string(id);
  def.size_param = fresh();
  def.seed_param = fresh();
  std::vector<CodeVal> params;
  for (std::size_t i = 0; i < arity; ++i) {
    def.params.push_back(fresh());
    params.push_back(CodeVal::var(def.params.back()));
  }
  const CodeVal size = CodeVal::var(def.size_param);
  const CodeVal seed = CodeVal::var(def.seed_param);
  defs_.push_back(std::move(def));

  frames_.emplace_back();
  open_block();
  active_.push_back(key);
  CodeVal result = emit(size, seed, params);
  active_.pop_back();
  ir::Block body = close_block(std::move(result));
  frames_.pop_back();
  defs_[id].body = std::move(body);
  return id;
}

bool Builder::active(const void* key) const {
  return std::find(active_.begin(), active_.end(), key) != active_.end();
}

ir::Program Builder::finish(ir::DefId entry) {
  ir::Program p;
  p.defs = std::move(defs_);
  p.entry = entry;
  p.var_count = next_var_;
  return p;
}

Gen<std::int64_t> int_range(CodeVal lo, CodeVal hi) {
  return Gen<std::int64_t>([lo = std::move(lo), hi = std::move(hi)](
                               const CodeVal&, const CodeVal&, Builder& b) {
    if (lo.is_const_int() && hi.is_const_int() && lo.int_value() > hi.int_value()) {
      throw ContractError("int_range: lo > hi");
    }
    return b.let_insert(ir::Expr{ir::Sample{lo, hi}});
  });
}

Gen<bool> boolean() {
  return bind(int_range(ir::lit(0), ir::lit(1)), [](CodeVal x) {
    return pure<bool>(CodeVal::prim(ir::PrimOp::kToBool, {std::move(x)}));
  });
}

Gen<std::int64_t> size() {
  return Gen<std::int64_t>(
      [](const CodeVal& size, const CodeVal&, Builder&) { return size; });
}

namespace detail {

CodeVal emit_weighted_union(
    const std::vector<CodeVal>& weights,
    const std::vector<std::function<CodeVal(Builder&)>>& bodies, Builder& b) {
  const bool all_const = std::all_of(weights.begin(), weights.end(),
                                     [](const CodeVal& w) { return w.is_const_int(); });
  std::int64_t const_total = 0;
  if (all_const) {
    for (const auto& w : weights) {
      if (w.int_value() < 0) throw ContractError("weighted_union: negative weight");
      const_total += w.int_value();
    }
  }
  CodeVal total;
  if (all_const && const_total >= 1 && b.options().fold_constants) {
    total = ir::lit(const_total);
  } else {
    total = b.let_insert(
        ir::Expr{ir::Pure{CodeVal::prim(ir::PrimOp::kWeightTotal, weights)}});
  }
  const CodeVal r = b.let_insert(ir::Expr{ir::Sample{ir::lit(0), total - ir::lit(1)}});
  ir::Choose choose{r, weights, {}};
  for (const auto& body : bodies) {
    b.open_block();
    CodeVal result = body(b);
    choose.bodies.push_back(b.close_block(std::move(result)));
  }
  return b.let_insert(ir::Expr{std::move(choose)});
}

CodeVal emit_if(const CodeVal& cond, const std::function<CodeVal(Builder&)>& then_body,
                const std::function<CodeVal(Builder&)>& else_body, Builder& b) {
  ir::If node{cond, {}};
  b.open_block();
  CodeVal t = then_body(b);
  node.arms.push_back(b.close_block(std::move(t)));
  b.open_block();
  CodeVal e = else_body(b);
  node.arms.push_back(b.close_block(std::move(e)));
  return b.let_insert(ir::Expr{std::move(node)});
}

ir::DefId resolve_handle(const std::weak_ptr<const FixInfo>& info,
                         std::size_t nargs, const Builder& b) {
  const auto locked = info.lock();
  if (!locked || !b.active(locked.get())) {
    throw CompileError("escaped handle: recurse used outside its fixed_point");
  }
  if (nargs != locked->arity) {
    throw CompileError("recurse: expected " + std::to_string(locked->arity) +
                       " arguments, got " + std::to_string(nargs));
  }
  return b.def_id(locked.get());
}

}  // namespace detail

ir::Program emit_program(
    const std::function<CodeVal(const CodeVal&, const CodeVal&, Builder&)>& stage_one,
    const CompileOptions& options) {
  Builder b(options);
  const ir::DefId entry = b.def_for(
      std::make_shared<int>(0), "main", 0,
      [&](const CodeVal& size, const CodeVal& seed, const std::vector<CodeVal>&) {
        return stage_one(size, seed, b);
      });
  ir::Program program = b.finish(entry);
  if (options.lint) {
    const auto problems = ir::lint(program);
    if (!problems.empty()) {
      std::string msg = "ill-formed program:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw CompileError(msg);
    }
  }
  return program;
}

}  // namespace stagegen::staged
