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
#include <span>

namespace stagegen {

// Canonical weighted selection shared by both backends: given r uniform on
// [0, S-1] with S the weight total, pick the first index whose cumulative
// weight exceeds r. Returns weights.size() when r >= S.
inline std::size_t select_weighted(std::int64_t r,
                                   std::span<const std::int64_t> weights) {
  std::int64_t cumulative = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (cumulative > r) return i;
  }
  return weights.size();
}

}  // namespace stagegen
