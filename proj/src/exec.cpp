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

#include "stagegen/exec.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "stagegen/errors.hpp"
#include "stagegen/prim.hpp"

namespace stagegen {

enum class Executable::Op : std::uint8_t {
  kSample,      // dst = int_in_range(a, b)
  kCall,        // dst = defs[extra](size = a, operands[c .. c+n])
  kConstruct,   // dst = node(extra, operands[c .. c+n])
  kExtern,      // dst = externs[extra](operands[c .. c+n])
  kMove,        // dst = a
  kAdd,
  kSub,
  kMul,
  kDiv,
  kEq,
  kLt,
  kLe,
  kNot,
  kAnd,
  kOr,
  kSelect,
  kToBool,
  kField,
  kTag,
  kWeightTotal,  // dst = total(operands[c .. c+n])
  kCheckSize,
  kJumpIfGe,     // if a >= b goto extra
  kSubInPlace,   // dst -= b
  kJumpIfFalse,  // if !a goto extra
  kJump,         // goto extra
  // goto operands[b + i] for the first i with a < consts[c + i], i < n
  kSwitch,
  kReturn,       // return a
};

// Operands: index >= 0 is a register, index < 0 is constant ~index.
struct Executable::Instr {
  Op op;
  std::int32_t dst = 0;
  std::int32_t a = 0;
  std::int32_t b = 0;
  std::int32_t c = 0;
  std::uint32_t extra = 0;
  std::uint32_t n = 0;
};

struct Executable::Def {
  std::vector<Instr> code;
  std::uint32_t frame_size = 0;
  std::uint32_t n_params = 0;
};

Executable::Executable() = default;
Executable::~Executable() = default;
Executable::Executable(Executable&&) noexcept = default;
Executable& Executable::operator=(Executable&&) noexcept = default;

std::size_t Executable::instruction_count() const {
  std::size_t n = 0;
  for (const auto& d : defs_) n += d.code.size();
  return n;
}

namespace {

constexpr std::size_t kMaxExternArity = 8;

using ir::CodeVal;
using Op = Executable::Op;

Op op_for(ir::PrimOp p) {
  switch (p) {
    case ir::PrimOp::kAdd: return Op::kAdd;
    case ir::PrimOp::kSub: return Op::kSub;
    case ir::PrimOp::kMul: return Op::kMul;
    case ir::PrimOp::kDiv: return Op::kDiv;
    case ir::PrimOp::kEq: return Op::kEq;
    case ir::PrimOp::kLt: return Op::kLt;
    case ir::PrimOp::kLe: return Op::kLe;
    case ir::PrimOp::kNot: return Op::kNot;
    case ir::PrimOp::kAnd: return Op::kAnd;
    case ir::PrimOp::kOr: return Op::kOr;
    case ir::PrimOp::kSelect: return Op::kSelect;
    case ir::PrimOp::kToBool: return Op::kToBool;
    case ir::PrimOp::kField: return Op::kField;
    case ir::PrimOp::kTag: return Op::kTag;
    case ir::PrimOp::kWeightTotal: return Op::kWeightTotal;
    case ir::PrimOp::kCheckSize: return Op::kCheckSize;
  }
  throw CompileError("unknown primitive");
}

}  // namespace

// Lowers one program. Registers are assigned per definition: slot 0 holds
// the size, slots 1..n the extra parameters, then one slot per let-bound
// variable and per flattened temporary.
class Lowering {
 public:
  Lowering(const ir::Program& program, Executable::Def* out_defs,
           std::vector<Value>& consts, std::vector<std::int32_t>& operands,
           std::vector<const ir::ExternFn*>& externs)
      : program_(program),
        out_defs_(out_defs),
        consts_(consts),
        operands_(operands),
        externs_(externs) {}

  void def(std::size_t index) {
    const ir::Def& d = program_.defs[index];
    out_ = &out_defs_[index];
    regs_.clear();
    next_reg_ = 0;
    regs_[d.size_param] = next_reg_++;
    seed_var_ = d.seed_param;
    for (ir::VarId p : d.params) regs_[p] = next_reg_++;
    out_->n_params = static_cast<std::uint32_t>(d.params.size());
    block(d.body, -1);
    out_->frame_size = static_cast<std::uint32_t>(next_reg_);
  }

 private:
  using Instr = Executable::Instr;

  std::int32_t fresh() { return next_reg_++; }
  std::uint32_t here() const { return static_cast<std::uint32_t>(out_->code.size()); }
  void emit(Instr in) { out_->code.push_back(in); }

  std::int32_t constant(Value v) {
    consts_.push_back(std::move(v));
    return ~static_cast<std::int32_t>(consts_.size() - 1);
  }

  // Lowers a list of values into the operand pool, returning its start.
  std::int32_t operand_list(const std::vector<CodeVal>& vals) {
    std::vector<std::int32_t> ops;
    ops.reserve(vals.size());
    for (const auto& v : vals) ops.push_back(operand(v));
    const auto start = static_cast<std::int32_t>(operands_.size());
    operands_.insert(operands_.end(), ops.begin(), ops.end());
    return start;
  }

  std::int32_t operand(const CodeVal& v) {
    switch (v.kind()) {
      case CodeVal::Kind::kInt:
        return constant(Value::integer(v.int_value()));
      case CodeVal::Kind::kBool:
        return constant(Value::boolean(v.bool_value()));
      case CodeVal::Kind::kVar: {
        auto it = regs_.find(v.var_id());
        if (it == regs_.end() || v.var_id() == seed_var_) {
          throw CompileError("lowering: variable v" + std::to_string(v.var_id()) +
                             " has no register");
        }
        return it->second;
      }
      default: {
        const std::int32_t t = fresh();
        into(v, t);
        return t;
      }
    }
  }

  // Computes v into register dst.
  void into(const CodeVal& v, std::int32_t dst) {
    switch (v.kind()) {
      case CodeVal::Kind::kConstruct: {
        Instr in{Op::kConstruct};
        in.c = operand_list(v.args());
        in.dst = dst;
        in.extra = static_cast<std::uint32_t>(v.tag());
        in.n = static_cast<std::uint32_t>(v.args().size());
        emit(in);
        return;
      }
      case CodeVal::Kind::kExtern: {
        if (v.args().size() > kMaxExternArity) {
          throw CompileError(std::string("extern ") + v.extern_fn()->name +
                             ": too many arguments");
        }
        Instr in{Op::kExtern};
        in.c = operand_list(v.args());
        in.dst = dst;
        in.extra = static_cast<std::uint32_t>(externs_.size());
        in.n = static_cast<std::uint32_t>(v.args().size());
        externs_.push_back(v.extern_fn());
        emit(in);
        return;
      }
      case CodeVal::Kind::kPrim: {
        const auto& args = v.args();
        Instr in{op_for(v.prim_op())};
        if (v.prim_op() == ir::PrimOp::kWeightTotal) {
          in.c = operand_list(args);
          in.n = static_cast<std::uint32_t>(args.size());
        } else {
          if (args.size() > 0) in.a = operand(args[0]);
          if (args.size() > 1) in.b = operand(args[1]);
          if (args.size() > 2) in.c = operand(args[2]);
        }
        in.dst = dst;
        emit(in);
        return;
      }
      case CodeVal::Kind::kInline:
        expr(v.effect(), dst);
        return;
      default: {
        Instr in{Op::kMove};
        in.a = operand(v);
        in.dst = dst;
        emit(in);
        return;
      }
    }
  }

  void expr(const ir::Expr& e, std::int32_t dst) {
    if (const auto* s = std::get_if<ir::Sample>(&e.node)) {
      Instr in{Op::kSample};
      in.a = operand(s->lo);
      in.b = operand(s->hi);
      in.dst = dst;
      emit(in);
    } else if (const auto* c = std::get_if<ir::Call>(&e.node)) {
      Instr in{Op::kCall};
      in.a = operand(c->size);
      in.c = operand_list(c->args);
      in.n = static_cast<std::uint32_t>(c->args.size());
      in.extra = c->def;
      in.dst = dst;
      emit(in);
    } else if (const auto* ch = std::get_if<ir::Choose>(&e.node)) {
      choose(*ch, dst);
    } else if (const auto* f = std::get_if<ir::If>(&e.node)) {
      Instr test{Op::kJumpIfFalse};
      test.a = operand(f->cond);
      const std::uint32_t test_at = here();
      emit(test);
      block(f->arms[0], dst);
      if (dst < 0) {
        out_->code[test_at].extra = here();
        block(f->arms[1], dst);
        return;
      }
      const std::uint32_t jump_at = here();
      emit(Instr{Op::kJump});
      out_->code[test_at].extra = here();
      block(f->arms[1], dst);
      out_->code[jump_at].extra = here();
    } else {
      into(std::get<ir::Pure>(e.node).value, dst);
    }
  }

  void choose(const ir::Choose& ch, std::int32_t dst) {
    const bool constant_weights =
        std::all_of(ch.weights.begin(), ch.weights.end(),
                    [](const CodeVal& w) { return w.is_const_int(); });
    if (constant_weights) {
      switch_choose(ch, dst);
      return;
    }
    const std::int32_t r = fresh();
    into(ch.r, r);
    std::vector<std::uint32_t> exits;
    const std::size_t last = ch.bodies.size() - 1;
    for (std::size_t i = 0; i < ch.bodies.size(); ++i) {
      if (i == last) {
        block(ch.bodies[i], dst);
        break;
      }
      const std::int32_t w = operand(ch.weights[i]);
      Instr test{Op::kJumpIfGe};
      test.a = r;
      test.b = w;
      const std::uint32_t test_at = here();
      emit(test);
      block(ch.bodies[i], dst);
      if (dst >= 0) {
        exits.push_back(here());
        emit(Instr{Op::kJump});
      }
      out_->code[test_at].extra = here();
      Instr sub{Op::kSubInPlace};
      sub.dst = r;
      sub.b = w;
      emit(sub);
    }
    for (std::uint32_t at : exits) out_->code[at].extra = here();
  }

  // Constant weights: cumulative thresholds are computed here, and the run
  // time cost is one scan over them.
  void switch_choose(const ir::Choose& ch, std::int32_t dst) {
    Instr sw{Op::kSwitch};
    sw.a = operand(ch.r);
    sw.c = static_cast<std::int32_t>(consts_.size());
    sw.n = static_cast<std::uint32_t>(ch.weights.size());
    std::int64_t cumulative = 0;
    for (const auto& w : ch.weights) {
      cumulative += w.int_value();
      consts_.push_back(Value::integer(cumulative));
    }
    sw.b = static_cast<std::int32_t>(operands_.size());
    operands_.resize(operands_.size() + ch.weights.size());
    emit(sw);
    std::vector<std::uint32_t> exits;
    for (std::size_t i = 0; i < ch.bodies.size(); ++i) {
      operands_[sw.b + i] = static_cast<std::int32_t>(here());
      block(ch.bodies[i], dst);
      if (dst < 0) continue;
      exits.push_back(here());
      emit(Instr{Op::kJump});
    }
    for (std::uint32_t at : exits) out_->code[at].extra = here();
  }

  // dst < 0 means the block result is the definition's return value.
  void block(const ir::Block& b, std::int32_t dst) {
    // A trailing `let v = choose/if ...; yield v` in return position lowers
    // with each arm returning directly.
    if (dst < 0 && !b.lets.empty() && b.result.kind() == CodeVal::Kind::kVar &&
        b.result.var_id() == b.lets.back().var &&
        (std::holds_alternative<ir::Choose>(b.lets.back().expr.node) ||
         std::holds_alternative<ir::If>(b.lets.back().expr.node))) {
      for (std::size_t i = 0; i + 1 < b.lets.size(); ++i) {
        const std::int32_t reg = fresh();
        expr(b.lets[i].expr, reg);
        regs_[b.lets[i].var] = reg;
      }
      expr(b.lets.back().expr, -1);
      return;
    }
    for (const auto& let : b.lets) {
      const std::int32_t reg = fresh();
      expr(let.expr, reg);
      regs_[let.var] = reg;
    }
    if (dst < 0) {
      Instr ret{Op::kReturn};
      ret.a = operand(b.result);
      emit(ret);
    } else {
      into(b.result, dst);
    }
  }

  const ir::Program& program_;
  Executable::Def* out_defs_;
  std::vector<Value>& consts_;
  std::vector<std::int32_t>& operands_;
  std::vector<const ir::ExternFn*>& externs_;
  Executable::Def* out_ = nullptr;
  std::unordered_map<ir::VarId, std::int32_t> regs_;
  std::int32_t next_reg_ = 0;
  ir::VarId seed_var_ = 0;
};

std::shared_ptr<const Executable> Executable::lower(const ir::Program& program) {
  auto exe = std::make_shared<Executable>();
  exe->defs_.resize(program.defs.size());
  Lowering lowering(program, exe->defs_.data(), exe->consts_, exe->operands_,
                    exe->externs_);
  for (std::size_t i = 0; i < program.defs.size(); ++i) lowering.def(i);
  exe->entry_ = program.entry;
  const auto& entry_code = exe->defs_[exe->entry_].code;
  if (entry_code.size() == 1 && entry_code[0].op == Op::kReturn && entry_code[0].a < 0) {
    exe->constant_result_ = exe->consts_[~entry_code[0].a];
  }
  return exe;
}

// Register stack shared by every executable on a thread. Slots at or above
// `top` always hold integers, so pushing a frame needs no construction.
struct Executable::Stack {
  std::unique_ptr<Value[]> data_owner = std::make_unique<Value[]>(1024);
  Value* data = data_owner.get();
  std::size_t cap = 1024;
  std::size_t top = 0;

  std::size_t push(std::size_t n) {
    if (top + n > cap) grow(top + n);
    const std::size_t base = top;
    top += n;
    return base;
  }
  void pop_to(std::size_t base) {
    for (std::size_t i = base; i < top; ++i) {
      if (data[i].is_node()) data[i] = Value();
    }
    top = base;
  }
  void grow(std::size_t need) {
    const std::size_t next = std::max(need, cap * 2);
    auto fresh = std::make_unique<Value[]>(next);
    for (std::size_t i = 0; i < top; ++i) fresh[i] = std::move(data[i]);
    data_owner = std::move(fresh);
    data = data_owner.get();
    cap = next;
  }
};

namespace {

constinit thread_local Executable::Stack* tls_stack = nullptr;

Executable::Stack& thread_stack() {
  if (tls_stack == nullptr) [[unlikely]] {
    thread_local std::unique_ptr<Executable::Stack> owner =
        std::make_unique<Executable::Stack>();
    tls_stack = owner.get();
  }
  return *tls_stack;
}

}  // namespace

Value Executable::run_program(std::int64_t size, Seed& seed) const {
  if (size < 0) throw ContractError("run: negative size");
  const Def& entry = defs_[entry_];
  Stack& stack = thread_stack();
  struct Unwind {
    Stack& stack;
    std::size_t base;
    ~Unwind() { stack.pop_to(base); }
  } unwind{stack, stack.push(entry.frame_size)};
  stack.data[unwind.base] = Value::integer(size);
  return exec(entry, stack, unwind.base, seed);
}

Value Executable::exec(const Def& def, Stack& stack, std::size_t base,
                       Seed& seed) const {
  const Instr* code = def.code.data();
  Value* regs = stack.data + base;
  const Value* consts = consts_.data();
  auto get = [&](std::int32_t x) -> const Value& {
    return x >= 0 ? regs[x] : consts[~x];
  };
  std::uint32_t pc = 0;
  for (;;) {
    const Instr& in = code[pc++];
    switch (in.op) {
      case Op::kSample:
        regs[in.dst] = Value::integer(
            seed.int_in_range(get(in.a).as_int(), get(in.b).as_int()));
        break;
      case Op::kCall: {
        const Def& callee = defs_[in.extra];
        const std::size_t callee_base = stack.push(callee.frame_size);
        regs = stack.data + base;
        Value* frame = stack.data + callee_base;
        frame[0] = get(in.a);
        for (std::uint32_t i = 0; i < in.n; ++i) {
          frame[1 + i] = get(operands_[in.c + i]);
        }
        Value result = exec(callee, stack, callee_base, seed);
        stack.pop_to(callee_base);
        regs = stack.data + base;
        regs[in.dst] = std::move(result);
        break;
      }
      case Op::kConstruct: {
        const std::int32_t* ops = operands_.data() + in.c;
        regs[in.dst] = Value::node_with(
            static_cast<std::int32_t>(in.extra), in.n,
            [&](std::size_t i) -> const Value& { return get(ops[i]); });
        break;
      }
      case Op::kExtern: {
        const std::int32_t* ops = operands_.data() + in.c;
        std::array<Value, kMaxExternArity> buf;
        for (std::uint32_t i = 0; i < in.n; ++i) buf[i] = get(ops[i]);
        regs[in.dst] =
            externs_[in.extra]->fn(std::span<const Value>(buf.data(), in.n));
        break;
      }
      case Op::kMove:
        regs[in.dst] = get(in.a);
        break;
      case Op::kAdd:
        regs[in.dst] = Value::integer(get(in.a).as_int() + get(in.b).as_int());
        break;
      case Op::kSub:
        regs[in.dst] = Value::integer(get(in.a).as_int() - get(in.b).as_int());
        break;
      case Op::kMul:
        regs[in.dst] = Value::integer(get(in.a).as_int() * get(in.b).as_int());
        break;
      case Op::kEq:
        regs[in.dst] = Value::boolean(get(in.a) == get(in.b));
        break;
      case Op::kLt:
        regs[in.dst] = Value::boolean(get(in.a).as_int() < get(in.b).as_int());
        break;
      case Op::kLe:
        regs[in.dst] = Value::boolean(get(in.a).as_int() <= get(in.b).as_int());
        break;
      case Op::kNot:
        regs[in.dst] = Value::boolean(!get(in.a).as_bool());
        break;
      case Op::kToBool:
        regs[in.dst] = Value::boolean(get(in.a).as_int() != 0);
        break;
      case Op::kSelect:
        regs[in.dst] = get(in.a).as_bool() ? get(in.b) : get(in.c);
        break;
      case Op::kDiv:
      case Op::kAnd:
      case Op::kOr:
      case Op::kField:
      case Op::kTag:
      case Op::kCheckSize: {
        const std::array<Value, 2> args{get(in.a), get(in.b)};
        static constexpr ir::PrimOp kPrims[] = {
            ir::PrimOp::kDiv, ir::PrimOp::kAnd,  ir::PrimOp::kOr,
            ir::PrimOp::kField, ir::PrimOp::kTag, ir::PrimOp::kCheckSize};
        ir::PrimOp p = ir::PrimOp::kDiv;
        switch (in.op) {
          case Op::kDiv: p = kPrims[0]; break;
          case Op::kAnd: p = kPrims[1]; break;
          case Op::kOr: p = kPrims[2]; break;
          case Op::kField: p = kPrims[3]; break;
          case Op::kTag: p = kPrims[4]; break;
          default: p = kPrims[5]; break;
        }
        regs[in.dst] = ir::eval_prim(p, args);
        break;
      }
      case Op::kWeightTotal: {
        std::int64_t total = 0;
        for (std::uint32_t i = 0; i < in.n; ++i) {
          const std::int64_t w = get(operands_[in.c + i]).as_int();
          if (w < 0) throw ContractError("weighted_union: negative weight");
          total += w;
        }
        if (total == 0) throw GenerationError("empty distribution");
        regs[in.dst] = Value::integer(total);
        break;
      }
      case Op::kJumpIfGe:
        if (get(in.a).as_int() >= get(in.b).as_int()) pc = in.extra;
        break;
      case Op::kSubInPlace:
        regs[in.dst] = Value::integer(regs[in.dst].as_int() - get(in.b).as_int());
        break;
      case Op::kJumpIfFalse:
        if (!get(in.a).as_bool()) pc = in.extra;
        break;
      case Op::kJump:
        pc = in.extra;
        break;
      case Op::kSwitch: {
        const std::int64_t r = get(in.a).as_int();
        const Value* thresholds = consts + in.c;
        std::uint32_t i = 0;
        while (i + 1 < in.n && thresholds[i].as_int() <= r) ++i;
        pc = static_cast<std::uint32_t>(operands_[in.b + i]);
        break;
      }
      case Op::kReturn:
        if (in.a >= 0) return std::move(regs[in.a]);
        return consts[~in.a];
    }
  }
}

}  // namespace stagegen
