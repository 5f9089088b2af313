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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "apar/ast.hpp"
#include "apar/depgraph.hpp"
#include "apar/resolve.hpp"

namespace apar {

struct EvalOptions {
  int max_call_depth = 10000;
};

using Env = std::map<std::string, Value>;

// Call-by-value, left-to-right evaluation. Arithmetic wraps on 64 bits.
// Effects (print) append to `out`. Reentrant for disjoint environments.
Value eval_expr(const Expr& expr, const Env& env, const Program& program,
                const SymbolTable& symbols, std::string& out,
                const EvalOptions& opts = {});

struct SeqResult {
  Value final_value;
  std::string output;
  std::vector<std::pair<TaskId, Value>> steps;  // per-statement value trace
};

// Sequential reference run: executes the entry body strictly in source
// order. The single-thread baseline and the oracle for distributed runs.
SeqResult run_sequential(const Program& program, const SymbolTable& symbols,
                         const std::string& entry, const EvalOptions& opts = {});

}  // namespace apar
