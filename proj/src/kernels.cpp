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

#include "apar/kernels.hpp"

#include <cstdint>

#include "apar/error.hpp"

namespace apar {

std::pair<RngState, std::uint64_t> splitmix64_next(RngState s) {
  s.state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s.state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {s, z ^ (z >> 31)};
}

VMatrix gen_matrix(std::int64_t seed, std::int64_t rows, std::int64_t cols) {
  if (rows < 1 || cols < 1 || rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
    throw EvalError("genMatrix: dimensions must be in [1, " + std::to_string(kMaxMatrixDim) +
                    "], got " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  VMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.cells.resize(static_cast<std::size_t>(rows * cols));
  RngState rng{static_cast<std::uint64_t>(seed)};
  for (auto& cell : m.cells) {
    auto [next, out] = splitmix64_next(rng);
    rng = next;
    cell = static_cast<std::int64_t>(out % 201) - 100;
  }
  return m;
}

VMatrix mat_mul(const VMatrix& a, const VMatrix& b) {
  if (a.cols != b.rows) {
    throw EvalError("matMul: dimension mismatch, " + std::to_string(a.rows) + "x" +
                    std::to_string(a.cols) + " times " + std::to_string(b.rows) + "x" +
                    std::to_string(b.cols));
  }
  VMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.cells.assign(static_cast<std::size_t>(a.rows * b.cols), 0);
  const std::size_t n = static_cast<std::size_t>(a.rows);
  const std::size_t k = static_cast<std::size_t>(a.cols);
  const std::size_t p = static_cast<std::size_t>(b.cols);
  // i-k-j loop order keeps the inner accesses sequential.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t kk = 0; kk < k; ++kk) {
      const std::uint64_t aik = static_cast<std::uint64_t>(a.cells[i * k + kk]);
      if (aik == 0) continue;
      const std::size_t brow = kk * p;
      for (std::size_t j = 0; j < p; ++j) {
        out.cells[i * p + j] = static_cast<std::int64_t>(
            static_cast<std::uint64_t>(out.cells[i * p + j]) +
            aik * static_cast<std::uint64_t>(b.cells[brow + j]));
      }
    }
  }
  return out;
}

std::int64_t checksum(const VMatrix& m) {
  std::uint64_t sum = 0;
  for (std::int64_t c : m.cells) sum += static_cast<std::uint64_t>(c);
  return static_cast<std::int64_t>(sum);
}

const std::vector<BuiltinSpec>& builtin_table() {
  static const std::vector<BuiltinSpec> table = {
      {"genMatrix", 3, Purity::Pure},
      {"matMul", 2, Purity::Pure},
      {"checksum", 1, Purity::Pure},
      {"print", 1, Purity::Effectful},
      {"clean_files", 0, Purity::Effectful},
      {"complex_evaluation", 1, Purity::Pure},
      {"semantic_analysis", 0, Purity::Effectful},
  };
  return table;
}

const BuiltinSpec* find_builtin(const std::string& name) {
  for (const auto& b : builtin_table()) {
    if (name == b.name) return &b;
  }
  return nullptr;
}

namespace {

std::int64_t want_int(const Value& v, const char* who) {
  if (const auto* i = std::get_if<VInt>(&v.v)) return i->value;
  throw EvalError(std::string(who) + ": expected an integer argument, got " + render_value(v));
}

const VMatrix& want_matrix(const Value& v, const char* who) {
  if (const auto* m = std::get_if<VMatrix>(&v.v)) return *m;
  throw EvalError(std::string(who) + ": expected a matrix argument, got " + render_value(v));
}

const VSummary& want_summary(const Value& v, const char* who) {
  if (const auto* s = std::get_if<VSummary>(&v.v)) return *s;
  throw EvalError(std::string(who) + ": expected a summary argument, got " + render_value(v));
}

}  // namespace

Value call_builtin(const std::string& name, std::span<const Value> args, std::string& out) {
  const BuiltinSpec* spec = find_builtin(name);
  if (spec == nullptr) throw EvalError("unknown builtin '" + name + "'");
  if (static_cast<int>(args.size()) != spec->arity) {
    throw EvalError("builtin '" + name + "' expects " + std::to_string(spec->arity) +
                    " arguments, got " + std::to_string(args.size()));
  }
  if (name == "genMatrix") {
    return Value{gen_matrix(want_int(args[0], "genMatrix"), want_int(args[1], "genMatrix"),
                            want_int(args[2], "genMatrix"))};
  }
  if (name == "matMul") {
    return Value{mat_mul(want_matrix(args[0], "matMul"), want_matrix(args[1], "matMul"))};
  }
  if (name == "checksum") {
    return v_int(checksum(want_matrix(args[0], "checksum")));
  }
  if (name == "print") {
    out += render_value(args[0]);
    out += "\n";
    return v_unit();
  }
  // Stand-ins for the example pipeline; their bodies are fictional but fixed.
  if (name == "clean_files") {
    return Value{VSummary{42, checksum(gen_matrix(0, 8, 8))}};
  }
  if (name == "complex_evaluation") {
    const VSummary& s = want_summary(args[0], "complex_evaluation");
    return v_int(wrap_add(s.count, s.digest));
  }
  if (name == "semantic_analysis") {
    return v_int(7);
  }
  throw EvalError("builtin '" + name + "' has no implementation");
}

}  // namespace apar
