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

#include <string>
#include <vector>

#include "apar/ast.hpp"
#include "apar/resolve.hpp"

namespace apar {

// Task ids are statement indices within the entry body, 0-based and dense.
using TaskId = int;

// Pseudo-source of the first World edge.
inline constexpr TaskId kInitialWorld = -1;

struct Dep {
  enum class Kind { Data, World };
  Kind kind = Kind::Data;
  TaskId from = kInitialWorld;
  std::string name;  // Data deps: the variable carried along the edge
};

bool operator==(const Dep& a, const Dep& b);
bool operator<(const Dep& a, const Dep& b);

struct TaskNode {
  TaskId id = 0;
  StmtKind stmt_kind = StmtKind::Bare;
  std::string binds_name;  // empty for Bare
  ExprPtr rhs;
  Purity purity = Purity::Pure;
  std::string callee;     // top-level callee when the RHS is a call form
  std::vector<Dep> deps;  // sorted, unique
};

// The data dependency graph of one entry function's do-block. Edges only
// point from lower statement index to higher, so the graph is acyclic by
// construction. Every effectful node holds exactly one World dependency,
// forming a chain through `world_chain` in statement order; pure nodes hold
// none.
struct DepGraph {
  std::string entry;
  std::vector<TaskNode> nodes;      // indexed by TaskId
  std::vector<TaskId> world_chain;  // effectful tasks in statement order
};

// Entry must be a nullary, effectful user definition with a do-block.
const FuncDef& validate_entry(const Program& program, const SymbolTable& symbols,
                              const std::string& entry);

DepGraph build_graph(const Program& program, const std::string& entry,
                     const SymbolTable& symbols);

// Deterministic topological order; always equals statement order 0..n-1.
std::vector<TaskId> toposort(const DepGraph& g);

// DOT rendering: one vertex per task labeled "<id>: <callee-or-kind>", a
// distinguished InitialWorld vertex, solid Data edges labeled with the
// variable name, dashed World edges labeled RealWorld. Byte-deterministic.
std::string to_dot(const DepGraph& g);

// Free local variables of an expression (names that are not top-level
// functions), sorted and unique.
std::vector<std::string> free_vars(const Expr& e, const SymbolTable& symbols);

// True when evaluating the expression involves any function call, counting
// references to nullary functions.
bool rhs_has_call(const Expr& e, const SymbolTable& symbols);

}  // namespace apar
