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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "stagegen/ir.hpp"
#include "stagegen/splitmix.hpp"
#include "stagegen/value.hpp"

namespace stagegen {

// Flat register-machine form of an ir::Program. Each definition becomes a
// linear instruction array over a frame of register slots; weighted choice
// becomes a compare-and-jump chain and recursion a direct call. Nothing from
// the stage-one combinators survives lowering.
class Executable {
 public:
  static std::shared_ptr<const Executable> lower(const ir::Program& program);

  // Throws ContractError for a negative size.
  Value run(std::int64_t size, Seed& seed) const {
    if (constant_result_ && size >= 0) return *constant_result_;
    return run_program(size, seed);
  }

  std::size_t instruction_count() const;

  enum class Op : std::uint8_t;
  struct Instr;
  struct Def;
  struct Stack;

  Executable();
  ~Executable();
  Executable(Executable&&) noexcept;
  Executable& operator=(Executable&&) noexcept;

 private:
  Value run_program(std::int64_t size, Seed& seed) const;
  Value exec(const Def& def, Stack& stack, std::size_t base, Seed& seed) const;

  std::vector<Def> defs_;
  std::vector<Value> consts_;
  std::vector<std::int32_t> operands_;
  std::vector<const ir::ExternFn*> externs_;
  std::uint32_t entry_ = 0;
  // Set when the program has no effects and its result is known.
  std::optional<Value> constant_result_;
};

}  // namespace stagegen
