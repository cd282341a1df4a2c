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

#include "stagegen/prim.hpp"

#include <string>

#include "stagegen/errors.hpp"

namespace stagegen::ir {

Value eval_prim(PrimOp op, std::span<const Value> a) {
  switch (op) {
    case PrimOp::kAdd:
      return Value::integer(a[0].as_int() + a[1].as_int());
    case PrimOp::kSub:
      return Value::integer(a[0].as_int() - a[1].as_int());
    case PrimOp::kMul:
      return Value::integer(a[0].as_int() * a[1].as_int());
    case PrimOp::kDiv:
      if (a[1].as_int() == 0) throw GenerationError("division by zero");
      return Value::integer(a[0].as_int() / a[1].as_int());
    case PrimOp::kEq:
      return Value::boolean(a[0] == a[1]);
    case PrimOp::kLt:
      return Value::boolean(a[0].as_int() < a[1].as_int());
    case PrimOp::kLe:
      return Value::boolean(a[0].as_int() <= a[1].as_int());
    case PrimOp::kNot:
      return Value::boolean(!a[0].as_bool());
    case PrimOp::kAnd:
      return Value::boolean(a[0].as_bool() && a[1].as_bool());
    case PrimOp::kOr:
      return Value::boolean(a[0].as_bool() || a[1].as_bool());
    case PrimOp::kSelect:
      return a[0].as_bool() ? a[1] : a[2];
    case PrimOp::kToBool:
      return Value::boolean(a[0].as_int() != 0);
    case PrimOp::kField:
      return a[0].field(static_cast<std::size_t>(a[1].as_int()));
    case PrimOp::kTag:
      return Value::integer(a[0].tag());
    case PrimOp::kWeightTotal: {
      std::int64_t total = 0;
      for (const auto& w : a) {
        if (w.as_int() < 0) throw ContractError("weighted_union: negative weight");
        total += w.as_int();
      }
      if (total == 0) throw GenerationError("empty distribution");
      return Value::integer(total);
    }
    case PrimOp::kCheckSize:
      if (a[0].as_int() < 0) {
        throw ContractError("with_size: negative size " +
                            std::to_string(a[0].as_int()));
      }
      return a[0];
  }
  throw GenerationError("unknown primitive");
}

}  // namespace stagegen::ir
