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

#include "stagegen/ir.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "stagegen/errors.hpp"
#include "stagegen/prim.hpp"

namespace stagegen::ir {

struct CodeVal::Node {
  Kind kind = Kind::kInt;
  std::int64_t int_value = 0;
  VarId var = 0;
  std::int32_t tag = 0;
  PrimOp op = PrimOp::kAdd;
  const ExternFn* ext = nullptr;
  std::vector<CodeVal> args;
  std::shared_ptr<const Expr> effect;
};

namespace {

bool foldable(PrimOp op) {
  switch (op) {
    case PrimOp::kWeightTotal:
    case PrimOp::kCheckSize:
    case PrimOp::kField:
    case PrimOp::kTag:
      return false;
    default:
      return true;
  }
}

Value to_runtime(const CodeVal& c) {
  return c.kind() == CodeVal::Kind::kBool ? Value::boolean(c.bool_value())
                                          : Value::integer(c.int_value());
}

CodeVal from_runtime(const Value& v) {
  return v.is_bool() ? CodeVal::const_bool(v.as_bool())
                     : CodeVal::const_int(v.as_int());
}

}  // namespace

const char* prim_name(PrimOp op) {
  switch (op) {
    case PrimOp::kAdd: return "+";
    case PrimOp::kSub: return "-";
    case PrimOp::kMul: return "*";
    case PrimOp::kDiv: return "/";
    case PrimOp::kEq: return "==";
    case PrimOp::kLt: return "<";
    case PrimOp::kLe: return "<=";
    case PrimOp::kNot: return "not";
    case PrimOp::kAnd: return "and";
    case PrimOp::kOr: return "or";
    case PrimOp::kSelect: return "select";
    case PrimOp::kToBool: return "to_bool";
    case PrimOp::kField: return "field";
    case PrimOp::kTag: return "tag";
    case PrimOp::kWeightTotal: return "total";
    case PrimOp::kCheckSize: return "check_size";
  }
  return "?";
}

CodeVal::CodeVal() {
  static const auto zero = std::make_shared<const Node>();
  node_ = zero;
}

CodeVal CodeVal::const_int(std::int64_t v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kInt;
  n->int_value = v;
  return CodeVal(std::move(n));
}

CodeVal CodeVal::const_bool(bool b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kBool;
  n->int_value = b ? 1 : 0;
  return CodeVal(std::move(n));
}

CodeVal CodeVal::var(VarId id) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->var = id;
  return CodeVal(std::move(n));
}

CodeVal CodeVal::construct(std::int32_t tag, std::vector<CodeVal> fields) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConstruct;
  n->tag = tag;
  n->args = std::move(fields);
  return CodeVal(std::move(n));
}

CodeVal CodeVal::prim(PrimOp op, std::vector<CodeVal> args) {
  if (op == PrimOp::kSelect && args.size() == 3 &&
      args[0].kind() == Kind::kBool) {
    return args[0].bool_value() ? args[1] : args[2];
  }
  bool all_const = foldable(op);
  for (const auto& a : args) all_const = all_const && a.is_const();
  const bool div_by_zero = op == PrimOp::kDiv && args.size() == 2 &&
                           args[1].is_const() && args[1].int_value() == 0;
  if (all_const && !div_by_zero) {
    std::vector<Value> values;
    values.reserve(args.size());
    for (const auto& a : args) values.push_back(to_runtime(a));
    return from_runtime(eval_prim(op, values));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPrim;
  n->op = op;
  n->args = std::move(args);
  return CodeVal(std::move(n));
}

CodeVal CodeVal::call_extern(const ExternFn* fn, std::vector<CodeVal> args) {
  if (args.size() != fn->arity) {
    throw CompileError(std::string("extern ") + fn->name + ": expected " +
                       std::to_string(fn->arity) + " arguments");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kExtern;
  n->ext = fn;
  n->args = std::move(args);
  return CodeVal(std::move(n));
}

CodeVal CodeVal::inline_effect(Expr effect) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kInline;
  n->effect = std::make_shared<const Expr>(std::move(effect));
  return CodeVal(std::move(n));
}

CodeVal::Kind CodeVal::kind() const { return node_->kind; }
std::int64_t CodeVal::int_value() const { return node_->int_value; }
bool CodeVal::bool_value() const { return node_->int_value != 0; }
VarId CodeVal::var_id() const { return node_->var; }
std::int32_t CodeVal::tag() const { return node_->tag; }
PrimOp CodeVal::prim_op() const { return node_->op; }
const ExternFn* CodeVal::extern_fn() const { return node_->ext; }
const std::vector<CodeVal>& CodeVal::args() const { return node_->args; }
const Expr& CodeVal::effect() const { return *node_->effect; }

// ---------------------------------------------------------------------------
// Stats

namespace {

void count_val(const CodeVal& v, Stats& s);
void count_block(const Block& b, Stats& s);

void count_expr(const Expr& e, Stats& s) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Sample>) {
          ++s.samples;
          count_val(node.lo, s);
          count_val(node.hi, s);
        } else if constexpr (std::is_same_v<T, Call>) {
          ++s.calls;
          count_val(node.size, s);
          for (const auto& a : node.args) count_val(a, s);
        } else if constexpr (std::is_same_v<T, Choose>) {
          ++s.chooses;
          count_val(node.r, s);
          for (const auto& w : node.weights) count_val(w, s);
          for (const auto& b : node.bodies) count_block(b, s);
        } else if constexpr (std::is_same_v<T, If>) {
          ++s.ifs;
          count_val(node.cond, s);
          for (const auto& b : node.arms) count_block(b, s);
        } else {
          count_val(node.value, s);
        }
      },
      e.node);
}

void count_val(const CodeVal& v, Stats& s) {
  switch (v.kind()) {
    case CodeVal::Kind::kInline:
      ++s.inlined_effects;
      count_expr(v.effect(), s);
      return;
    case CodeVal::Kind::kPrim:
      ++s.prims;
      break;
    default:
      break;
  }
  for (const auto& a : v.args()) count_val(a, s);
}

void count_block(const Block& b, Stats& s) {
  for (const auto& let : b.lets) {
    ++s.lets;
    count_expr(let.expr, s);
  }
  count_val(b.result, s);
}

}  // namespace

Stats stats(const Program& program) {
  Stats s;
  for (const auto& def : program.defs) count_block(def.body, s);
  return s;
}

// ---------------------------------------------------------------------------
// Lint

namespace {

class Linter {
 public:
  explicit Linter(const Program& p) : program_(p) {}

  std::vector<std::string> run() {
    if (program_.entry >= program_.defs.size()) problem("entry out of range");
    for (const auto& def : program_.defs) {
      current_ = &def;
      std::vector<VarId> scope;
      bind(def.size_param, scope);
      bind(def.seed_param, scope);
      for (VarId p : def.params) bind(p, scope);
      block(def.body, scope);
      unbind(scope);
    }
    return std::move(problems_);
  }

 private:
  void problem(const std::string& msg) {
    problems_.push_back((current_ ? current_->name + ": " : "") + msg);
  }

  void bind(VarId v, std::vector<VarId>& scope) {
    if (!bound_.insert(v).second) {
      problem("variable v" + std::to_string(v) + " bound more than once");
    }
    scope.push_back(v);
    in_scope_.insert(v);
  }

  void unbind(std::vector<VarId>& scope) {
    for (VarId v : scope) in_scope_.erase(v);
  }

  void use(const CodeVal& v) {
    switch (v.kind()) {
      case CodeVal::Kind::kVar:
        if (!in_scope_.count(v.var_id())) {
          problem("v" + std::to_string(v.var_id()) + " used out of scope");
        }
        return;
      case CodeVal::Kind::kInline:
        problem("effect spliced without a let binding");
        expr(v.effect());
        return;
      default:
        for (const auto& a : v.args()) use(a);
    }
  }

  void expr(const Expr& e) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Sample>) {
            use(node.lo);
            use(node.hi);
          } else if constexpr (std::is_same_v<T, Call>) {
            use(node.size);
            for (const auto& a : node.args) use(a);
            if (node.def >= program_.defs.size()) {
              problem("call to unknown def " + std::to_string(node.def));
            } else if (program_.defs[node.def].params.size() != node.args.size()) {
              problem("call to " + program_.defs[node.def].name +
                      " with wrong arity");
            }
          } else if constexpr (std::is_same_v<T, Choose>) {
            use(node.r);
            if (node.weights.size() != node.bodies.size() || node.bodies.empty()) {
              problem("malformed choose");
            }
            for (const auto& w : node.weights) use(w);
            for (const auto& b : node.bodies) nested(b);
          } else if constexpr (std::is_same_v<T, If>) {
            use(node.cond);
            if (node.arms.size() != 2) problem("malformed if");
            for (const auto& b : node.arms) nested(b);
          } else {
            use(node.value);
          }
        },
        e.node);
  }

  void nested(const Block& b) {
    std::vector<VarId> scope;
    block(b, scope);
    unbind(scope);
  }

  void block(const Block& b, std::vector<VarId>& scope) {
    for (const auto& let : b.lets) {
      expr(let.expr);
      bind(let.var, scope);
    }
    use(b.result);
  }

  const Program& program_;
  const Def* current_ = nullptr;
  std::unordered_set<VarId> bound_;
  std::unordered_set<VarId> in_scope_;
  std::vector<std::string> problems_;
};

}  // namespace

std::vector<std::string> lint(const Program& program) {
  return Linter(program).run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

class Printer {
 public:
  explicit Printer(const Program& p) : program_(p) {}

  std::string run() {
    for (const auto& def : program_.defs) {
      out_ << "def " << def.name << "(size=" << name(def.size_param)
           << ", seed=" << name(def.seed_param);
      for (VarId p : def.params) out_ << ", " << name(p);
      out_ << "):\n";
      block(def.body, 1);
    }
    if (!program_.defs.empty()) {
      out_ << "entry " << program_.defs[program_.entry].name << "\n";
    }
    return out_.str();
  }

 private:
  std::string name(VarId v) {
    auto [it, inserted] = names_.try_emplace(v, names_.size());
    return "v" + std::to_string(it->second);
  }

  std::string ref(VarId v) {
    auto it = names_.find(v);
    if (it == names_.end()) return "?v" + std::to_string(v);
    return "v" + std::to_string(it->second);
  }

  std::string val(const CodeVal& v) {
    switch (v.kind()) {
      case CodeVal::Kind::kInt:
        return std::to_string(v.int_value());
      case CodeVal::Kind::kBool:
        return v.bool_value() ? "true" : "false";
      case CodeVal::Kind::kVar:
        return ref(v.var_id());
      case CodeVal::Kind::kConstruct: {
        std::string s = v.tag() == kTupleTag ? "(" : "#" + std::to_string(v.tag()) + "(";
        for (std::size_t i = 0; i < v.args().size(); ++i) {
          if (i) s += ", ";
          s += val(v.args()[i]);
        }
        return s + ")";
      }
      case CodeVal::Kind::kPrim: {
        const auto& a = v.args();
        switch (v.prim_op()) {
          case PrimOp::kAdd:
          case PrimOp::kSub:
          case PrimOp::kMul:
          case PrimOp::kDiv:
          case PrimOp::kEq:
          case PrimOp::kLt:
          case PrimOp::kLe:
          case PrimOp::kAnd:
          case PrimOp::kOr:
            return "(" + val(a[0]) + " " + prim_name(v.prim_op()) + " " +
                   val(a[1]) + ")";
          default:
            break;
        }
        return call_like(prim_name(v.prim_op()), a);
      }
      case CodeVal::Kind::kExtern:
        return call_like(v.extern_fn()->name, v.args());
      case CodeVal::Kind::kInline:
        return "<" + inline_expr(v.effect()) + ">";
    }
    return "?";
  }

  std::string call_like(const std::string& f, const std::vector<CodeVal>& args) {
    std::string s = f + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ", ";
      s += val(args[i]);
    }
    return s + ")";
  }

  std::string call_text(const Call& c) {
    std::string s = "call " + program_.defs[c.def].name + "(size=" + val(c.size);
    for (const auto& a : c.args) s += ", " + val(a);
    return s + ")";
  }

  std::string inline_expr(const Expr& e) {
    if (const auto* s = std::get_if<Sample>(&e.node)) {
      return "sample(" + val(s->lo) + ", " + val(s->hi) + ")";
    }
    if (const auto* c = std::get_if<Call>(&e.node)) return call_text(*c);
    return "effect";
  }

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void block(const Block& b, int depth) {
    for (const auto& let : b.lets) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Sample>) {
              const std::string rhs = "sample(" + val(node.lo) + ", " + val(node.hi) + ")";
              indent(depth);
              out_ << "let " << name(let.var) << " = " << rhs << "\n";
            } else if constexpr (std::is_same_v<T, Call>) {
              const std::string rhs = call_text(node);
              indent(depth);
              out_ << "let " << name(let.var) << " = " << rhs << "\n";
            } else if constexpr (std::is_same_v<T, Choose>) {
              const std::string r = val(node.r);
              std::vector<std::string> weights;
              for (const auto& w : node.weights) weights.push_back(val(w));
              const std::string bound = name(let.var);
              indent(depth);
              out_ << "let " << bound << " = choose " << r << " {\n";
              for (std::size_t i = 0; i < node.bodies.size(); ++i) {
                indent(depth + 1);
                out_ << "< " << weights[i] << ":\n";
                block(node.bodies[i], depth + 2);
              }
              indent(depth);
              out_ << "}\n";
            } else if constexpr (std::is_same_v<T, If>) {
              const std::string c = val(node.cond);
              const std::string bound = name(let.var);
              indent(depth);
              out_ << "let " << bound << " = if " << c << " {\n";
              block(node.arms[0], depth + 1);
              indent(depth);
              out_ << "} else {\n";
              block(node.arms[1], depth + 1);
              indent(depth);
              out_ << "}\n";
            } else {
              const std::string rhs = val(node.value);
              indent(depth);
              out_ << "let " << name(let.var) << " = " << rhs << "\n";
            }
          },
          let.expr.node);
    }
    indent(depth);
    out_ << "yield " << val(b.result) << "\n";
  }

  const Program& program_;
  std::unordered_map<VarId, std::size_t> names_;
  std::ostringstream out_;
};

}  // namespace

std::string print(const Program& program) { return Printer(program).run(); }

}  // namespace stagegen::ir
