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
#include <string>
#include <variant>
#include <vector>

namespace apar {

struct Value;

struct VInt {
  std::int64_t value = 0;
};

struct VUnit {};

struct VTuple {
  std::vector<Value> elements;
};

// Row-major integer matrix; cells.size() == rows * cols.
struct VMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> cells;
};

struct VSummary {
  std::int64_t count = 0;
  std::int64_t digest = 0;
};

// Runtime values. Immutable once constructed; safe to share across threads.
struct Value {
  std::variant<VInt, VUnit, VTuple, VMatrix, VSummary> v;
};

inline Value v_int(std::int64_t x) { return Value{VInt{x}}; }
inline Value v_unit() { return Value{VUnit{}}; }

bool value_equal(const Value& a, const Value& b);
inline bool operator==(const Value& a, const Value& b) { return value_equal(a, b); }

// Canonical rendering used by print and by run summaries:
// integers in decimal, unit as "()", tuples as "(a, b)",
// matrices as "Matrix[RxC;checksum=S]", summaries as "Summary{count=N,digest=D}".
std::string render_value(const Value& v);

}  // namespace apar
