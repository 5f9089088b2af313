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

#include "apar/value.hpp"

#include <cstdint>
#include <variant>

namespace apar {

bool value_equal(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, VInt>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, VUnit>) {
          return true;
        } else if constexpr (std::is_same_v<T, VTuple>) {
          if (x.elements.size() != y.elements.size()) return false;
          for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (!value_equal(x.elements[i], y.elements[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, VMatrix>) {
          return x.rows == y.rows && x.cols == y.cols && x.cells == y.cells;
        } else {
          return x.count == y.count && x.digest == y.digest;
        }
      },
      a.v);
}

namespace {

std::int64_t wrapping_cell_sum(const VMatrix& m) {
  std::uint64_t sum = 0;
  for (std::int64_t c : m.cells) sum += static_cast<std::uint64_t>(c);
  return static_cast<std::int64_t>(sum);
}

}  // namespace

std::string render_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VInt>) {
          return std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, VUnit>) {
          return "()";
        } else if constexpr (std::is_same_v<T, VTuple>) {
          std::string out = "(";
          for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (i > 0) out += ", ";
            out += render_value(x.elements[i]);
          }
          out += ")";
          return out;
        } else if constexpr (std::is_same_v<T, VMatrix>) {
          return "Matrix[" + std::to_string(x.rows) + "x" + std::to_string(x.cols) +
                 ";checksum=" + std::to_string(wrapping_cell_sum(x)) + "]";
        } else {
          return "Summary{count=" + std::to_string(x.count) +
                 ",digest=" + std::to_string(x.digest) + "}";
        }
      },
      v.v);
}

}  // namespace apar
