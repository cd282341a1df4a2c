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

#include <stdexcept>
#include <string>

namespace stagegen {

// A caller broke an operation's precondition (lo > hi, negative size, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A generator failed while running, e.g. a weighted choice whose weights sum
// to zero.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stage-one failures: escaped recursion handles, scope violations.
class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A datatype schema that cannot be derived (RecRef outside Rec, empty sum,
// no terminating variant, bad JSON).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stagegen
