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

#include "stagegen/value.hpp"

#include <new>

namespace stagegen {

void* Value::allocate(std::int32_t tag, std::size_t arity) {
  void* raw = ::operator new(kFieldOffset + arity * sizeof(Value));
  return new (raw) Header{{1}, tag, static_cast<std::uint32_t>(arity)};
}

Value Value::node(std::int32_t tag, std::span<const Value> fields) {
  return node_with(tag, fields.size(), [&](std::size_t i) -> const Value& { return fields[i]; });
}

void Value::release() {
  Header* h = header();
  if (h->refs.fetch_sub(1, std::memory_order_acq_rel) != 1) return;
  auto* slots = reinterpret_cast<Value*>(reinterpret_cast<char*>(h) + kFieldOffset);
  for (std::uint32_t i = 0; i < h->arity; ++i) slots[i].~Value();
  h->~Header();
  ::operator delete(h);
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Value::Kind::kNode) return a.int_ == b.int_;
  if (a.ptr_ == b.ptr_) return true;
  if (a.tag() != b.tag() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.field(i) == b.field(i))) return false;
  }
  return true;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::kInt:
      return std::to_string(int_);
    case Kind::kBool:
      return int_ ? "true" : "false";
    case Kind::kNode:
      break;
  }
  std::string out = tag() == kTupleTag ? "(" : "#" + std::to_string(tag()) + "(";
  for (std::size_t i = 0; i < arity(); ++i) {
    if (i) out += ", ";
    out += field(i).to_string();
  }
  return out + ")";
}

}  // namespace stagegen
