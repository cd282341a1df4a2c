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

// Naive monadic generator library. A generator is a heap-allocated,
// dynamically dispatched function of (size, seed). Every bind runs its
// continuation to build a fresh generator, and every weighted union builds its
// cumulative table when it runs. That overhead is the point: this backend is
// the experimental control.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "stagegen/errors.hpp"
#include "stagegen/splitmix.hpp"

namespace stagegen::baseline {

namespace detail {
inline thread_local std::uint64_t* bind_counter = nullptr;
}  // namespace detail

// Counts executed binds on this thread while alive.
class CountBinds {
 public:
  CountBinds() : previous_(detail::bind_counter) {
    detail::bind_counter = &count_;
  }
  ~CountBinds() { detail::bind_counter = previous_; }
  CountBinds(const CountBinds&) = delete;
  CountBinds& operator=(const CountBinds&) = delete;

  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
  std::uint64_t* previous_;
};

template <class A>
class Gen;

namespace detail {

template <class A>
struct GenNode {
  virtual ~GenNode() = default;
  virtual A run(std::int64_t size, Seed& seed) const = 0;
};

template <class A, class F>
struct GenFn final : GenNode<A> {
  explicit GenFn(F f) : fn(std::move(f)) {}
  A run(std::int64_t size, Seed& seed) const override { return fn(size, seed); }
  F fn;
};

}  // namespace detail

template <class A>
class Gen {
 public:
  using value_type = A;

  template <class F>
    requires(!std::is_same_v<std::decay_t<F>, Gen> &&
             std::is_invocable_r_v<A, const F&, std::int64_t, Seed&>)
  explicit Gen(F fn)
      : node_(std::make_shared<const detail::GenFn<A, F>>(std::move(fn))) {}

  A operator()(std::int64_t size, Seed& seed) const { return node_->run(size, seed); }

 private:
  std::shared_ptr<const detail::GenNode<A>> node_;
};

template <class A>
Gen<A> pure(A x) {
  return Gen<A>([x = std::move(x)](std::int64_t, Seed&) { return x; });
}

template <class A, class K>
auto bind(Gen<A> g, K k) -> std::invoke_result_t<K, A> {
  using GB = std::invoke_result_t<K, A>;
  using B = typename GB::value_type;
  return GB([g = std::move(g), k = std::move(k)](std::int64_t size,
                                                  Seed& seed) -> B {
    if (detail::bind_counter != nullptr) ++*detail::bind_counter;
    A a = g(size, seed);
    const GB next = k(std::move(a));
    return next(size, seed);
  });
}

inline Gen<std::int64_t> int_range(std::int64_t lo, std::int64_t hi) {
  return Gen<std::int64_t>([lo, hi](std::int64_t, Seed& seed) {
    return seed.int_in_range(lo, hi);
  });
}

inline Gen<bool> boolean() {
  return Gen<bool>(
      [](std::int64_t, Seed& seed) { return seed.int_in_range(0, 1) != 0; });
}

inline Gen<std::int64_t> size() {
  return Gen<std::int64_t>([](std::int64_t size, Seed&) { return size; });
}

template <class A>
Gen<A> with_size(std::int64_t n, Gen<A> g) {
  if (n < 0) {
    throw ContractError("with_size: negative size " + std::to_string(n));
  }
  return Gen<A>(
      [n, g = std::move(g)](std::int64_t, Seed& seed) { return g(n, seed); });
}

template <class A>
using Choices = std::vector<std::pair<std::int64_t, Gen<A>>>;

template <class A>
Gen<A> weighted_union(Choices<A> choices) {
  if (choices.empty()) throw ContractError("weighted_union: no choices");
  return Gen<A>([choices = std::move(choices)](std::int64_t size, Seed& seed) {
    std::vector<std::int64_t> cumulative;
    cumulative.reserve(choices.size());
    std::int64_t total = 0;
    for (const auto& [weight, gen] : choices) {
      if (weight < 0) throw ContractError("weighted_union: negative weight");
      total += weight;
      cumulative.push_back(total);
    }
    if (total == 0) throw GenerationError("empty distribution");
    const std::int64_t r = seed.int_in_range(0, total - 1);
    std::size_t i = 0;
    while (cumulative[i] <= r) ++i;
    return choices[i].second(size, seed);
  });
}

// Ties the knot lazily: the handle passed to `f` forwards to the generator
// `f` returns. The handle is only valid while the returned generator lives.
template <class A, class F>
Gen<A> fixed_point(F f) {
  struct Slot {
    std::optional<Gen<A>> body;
  };
  auto slot = std::make_shared<Slot>();
  const Slot* raw = slot.get();
  Gen<A> handle(
      [raw](std::int64_t size, Seed& seed) { return (*raw->body)(size, seed); });
  slot->body.emplace(f(std::move(handle)));
  return Gen<A>([slot](std::int64_t size, Seed& seed) {
    return (*slot->body)(size, seed);
  });
}

// Recursion handle for parameterized fixed points: `handle(p)` is the
// recursive generator at parameter p.
template <class P, class A>
class Recur {
 public:
  using Make = std::function<Gen<A>(const P&)>;
  explicit Recur(const Make* make) : make_(make) {}

  Gen<A> operator()(P p) const {
    return Gen<A>([make = make_, p = std::move(p)](std::int64_t size,
                                                   Seed& seed) {
      return (*make)(p)(size, seed);
    });
  }

 private:
  const Make* make_;
};

// Parameterized recursion: `f(handle, p)` builds the generator for p, and
// the result starts at `init`.
template <class P, class A, class F>
Gen<A> fixed_point_param(F f, P init) {
  using Make = typename Recur<P, A>::Make;
  auto make = std::make_shared<Make>();
  const Make* raw = make.get();
  *make = [raw, f = std::move(f)](const P& p) { return f(Recur<P, A>(raw), p); };
  return Gen<A>([make, init = std::move(init)](std::int64_t size, Seed& seed) {
    return (*make)(init)(size, seed);
  });
}

template <class A>
A run(const Gen<A>& g, std::int64_t size, Seed& seed) {
  if (size < 0) throw ContractError("run: negative size");
  return g(size, seed);
}

}  // namespace stagegen::baseline
