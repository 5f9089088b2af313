// Copyright 2026 The apar Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apar/ast.hpp"
#include "apar/value.hpp"

namespace apar {

// All integer arithmetic in the language wraps modulo 2^64, so results are
// bit-identical across machines.
inline std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
inline std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
inline std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

struct RngState {
  std::uint64_t state = 0;
};

// splitmix64: state += 0x9E3779B97F4A7C15, then mix. Same sequence on every
// platform for a given seed.
std::pair<RngState, std::uint64_t> splitmix64_next(RngState s);

inline constexpr std::int64_t kMaxMatrixDim = 16384;

// Cells drawn row-major from splitmix64 seeded with `seed`, each reduced to
// [-100, 100] as (output mod 201) - 100 on the unsigned output.
VMatrix gen_matrix(std::int64_t seed, std::int64_t rows, std::int64_t cols);

// Schoolbook product with wrapping multiplies and adds.
VMatrix mat_mul(const VMatrix& a, const VMatrix& b);

// Wrapping sum of all cells.
std::int64_t checksum(const VMatrix& m);

struct BuiltinSpec {
  const char* name;
  int arity;
  Purity purity;
};

const std::vector<BuiltinSpec>& builtin_table();
const BuiltinSpec* find_builtin(const std::string& name);

// Dispatches a builtin call. print appends its canonical rendering plus a
// newline to `out` and returns unit.
Value call_builtin(const std::string& name, std::span<const Value> args, std::string& out);

}  // namespace apar
