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

#include <atomic>
#include <cstdint>
#include <initializer_list>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stagegen {

// Constructor tag reserved for anonymous tuples.
inline constexpr std::int32_t kTupleTag = -1;

// Universal immutable run-time value: a 64-bit integer, a boolean, or a
// tagged node with ordered fields. Nodes are shared and reference counted,
// so copying a Value is cheap and never copies structure.
class Value {
 public:
  enum class Kind : std::uint8_t { kInt, kBool, kNode };

  Value() : kind_(Kind::kInt), int_(0) {}
  Value(const Value& other) : kind_(other.kind_), int_(other.int_) {
    if (kind_ == Kind::kNode) retain();
  }
  Value(Value&& other) noexcept : kind_(other.kind_), int_(other.int_) {
    other.kind_ = Kind::kInt;
    other.int_ = 0;
  }
  Value& operator=(const Value& other) {
    if (other.kind_ == Kind::kNode) other.retain();
    const Kind kind = other.kind_;
    const std::int64_t bits = other.int_;
    if (kind_ == Kind::kNode) release();
    kind_ = kind;
    int_ = bits;
    return *this;
  }
  Value& operator=(Value&& other) noexcept {
    const Kind kind = other.kind_;
    const std::int64_t bits = other.int_;
    other.kind_ = Kind::kInt;
    other.int_ = 0;
    if (kind_ == Kind::kNode) release();
    kind_ = kind;
    int_ = bits;
    return *this;
  }
  ~Value() {
    if (kind_ == Kind::kNode) release();
  }

  static Value integer(std::int64_t v) {
    Value out;
    out.int_ = v;
    return out;
  }
  static Value boolean(bool b) {
    Value out;
    out.kind_ = Kind::kBool;
    out.int_ = b ? 1 : 0;
    return out;
  }
  static Value node(std::int32_t tag, std::span<const Value> fields);
  static Value node(std::int32_t tag, std::initializer_list<Value> fields) {
    return node(tag, std::span<const Value>(fields.begin(), fields.size()));
  }
  // Node whose i-th field is copied from get(i). `get` must not throw.
  template <class Get>
  static Value node_with(std::int32_t tag, std::size_t arity, Get&& get) {
    Value out;
    out.ptr_ = allocate(tag, arity);
    out.kind_ = Kind::kNode;
    Value* slots = const_cast<Value*>(out.fields_begin());
    for (std::size_t i = 0; i < arity; ++i) new (slots + i) Value(get(i));
    return out;
  }
  static Value tuple(std::initializer_list<Value> fields) {
    return node(kTupleTag, fields);
  }

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::kInt; }
  bool is_bool() const { return kind_ == Kind::kBool; }
  bool is_node() const { return kind_ == Kind::kNode; }

  // Scalars: integers and booleans share the payload slot.
  std::int64_t as_int() const { return int_; }
  bool as_bool() const { return int_ != 0; }

  std::int32_t tag() const { return header()->tag; }
  std::size_t arity() const { return header()->arity; }
  const Value& field(std::size_t i) const { return fields_begin()[i]; }
  std::span<const Value> fields() const {
    return {fields_begin(), header()->arity};
  }

  void swap(Value& other) noexcept {
    std::swap(kind_, other.kind_);
    std::swap(int_, other.int_);
  }

  friend bool operator==(const Value& a, const Value& b);

  // Generic rendering: integers, true/false, `#tag(f1, f2)`, tuples as
  // `(a, b)`.
  std::string to_string() const;

 private:
  struct Header {
    std::atomic<std::uint32_t> refs;
    std::int32_t tag;
    std::uint32_t arity;
  };
  static constexpr std::size_t kFieldOffset =
      (sizeof(Header) + alignof(std::int64_t) - 1) / alignof(std::int64_t) *
      alignof(std::int64_t);

  Header* header() const { return reinterpret_cast<Header*>(ptr_); }
  const Value* fields_begin() const {
    return reinterpret_cast<const Value*>(reinterpret_cast<char*>(ptr_) +
                                          kFieldOffset);
  }
  void retain() const {
    header()->refs.fetch_add(1, std::memory_order_relaxed);
  }
  void release();
  static void* allocate(std::int32_t tag, std::size_t arity);

  Kind kind_;
  union {
    std::int64_t int_;
    void* ptr_;
  };
};

// Conversion between native result types and Value, used where the staged
// backend hands back typed results.
template <class T>
struct ValueTraits;

template <>
struct ValueTraits<Value> {
  static Value to_value(const Value& v) { return v; }
  static Value from_value(Value v) { return v; }
};

template <>
struct ValueTraits<std::int64_t> {
  static Value to_value(std::int64_t v) { return Value::integer(v); }
  static std::int64_t from_value(const Value& v) { return v.as_int(); }
};

template <>
struct ValueTraits<bool> {
  static Value to_value(bool v) { return Value::boolean(v); }
  static bool from_value(const Value& v) { return v.as_bool(); }
};

template <class A, class B>
struct ValueTraits<std::pair<A, B>> {
  static Value to_value(const std::pair<A, B>& p) {
    return Value::tuple(
        {ValueTraits<A>::to_value(p.first), ValueTraits<B>::to_value(p.second)});
  }
  static std::pair<A, B> from_value(const Value& v) {
    return {ValueTraits<A>::from_value(v.field(0)),
            ValueTraits<B>::from_value(v.field(1))};
  }
};

template <class T>
Value to_value(const T& v) {
  return ValueTraits<T>::to_value(v);
}

}  // namespace stagegen
