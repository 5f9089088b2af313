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

#include "apar/depgraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <variant>

namespace apar {

bool operator==(const Dep& a, const Dep& b) {
  return a.kind == b.kind && a.from == b.from && a.name == b.name;
}

bool operator<(const Dep& a, const Dep& b) {
  return std::tie(a.kind, a.from, a.name) < std::tie(b.kind, b.from, b.name);
}

namespace {

void collect_vars(const Expr& e, const SymbolTable& symbols, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          if (symbols.count(x.name) == 0) out.insert(x.name);
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          for (const auto& el : x.elements) collect_vars(*el, symbols, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          for (const auto& arg : x.args) collect_vars(*arg, symbols, out);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          collect_vars(*x.cond, symbols, out);
          collect_vars(*x.then_branch, symbols, out);
          collect_vars(*x.else_branch, symbols, out);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          collect_vars(*x.lhs, symbols, out);
          collect_vars(*x.rhs, symbols, out);
        }
      },
      e.node);
}

const char* stmt_kind_word(StmtKind k) {
  switch (k) {
    case StmtKind::Bind:
      return "bind";
    case StmtKind::Let:
      return "let";
    case StmtKind::Bare:
      return "bare";
  }
  return "?";
}

}  // namespace

std::vector<std::string> free_vars(const Expr& e, const SymbolTable& symbols) {
  std::set<std::string> names;
  collect_vars(e, symbols, names);
  return {names.begin(), names.end()};
}

bool rhs_has_call(const Expr& e, const SymbolTable& symbols) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CallExpr>) {
          return true;
        } else if constexpr (std::is_same_v<T, Var>) {
          return symbols.count(x.name) != 0;  // nullary function reference
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          for (const auto& el : x.elements) {
            if (rhs_has_call(*el, symbols)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          return rhs_has_call(*x.cond, symbols) || rhs_has_call(*x.then_branch, symbols) ||
                 rhs_has_call(*x.else_branch, symbols);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          return rhs_has_call(*x.lhs, symbols) || rhs_has_call(*x.rhs, symbols);
        } else {
          return false;
        }
      },
      e.node);
}

const FuncDef& validate_entry(const Program& program, const SymbolTable& symbols,
                              const std::string& entry) {
  const FuncDef* def = program.find(entry);
  if (def == nullptr) throw GraphError("entry '" + entry + "' not found");
  if (symbols.at(entry).purity != Purity::Effectful) {
    throw GraphError("entry '" + entry + "' is pure; only IO functions can be scheduled");
  }
  if (!def->has_do) {
    throw GraphError("entry '" + entry +
                     "' has an expression body; nothing to schedule at statement granularity");
  }
  if (!def->params.empty()) {
    throw GraphError("entry '" + entry + "' must take no parameters");
  }
  return *def;
}

DepGraph build_graph(const Program& program, const std::string& entry,
                     const SymbolTable& symbols) {
  const FuncDef& def = validate_entry(program, symbols, entry);

  DepGraph g;
  g.entry = entry;
  std::map<std::string, TaskId> binder_of;
  TaskId last_effectful = kInitialWorld;

  for (std::size_t i = 0; i < def.body_stmts.size(); ++i) {
    const Stmt& stmt = def.body_stmts[i];
    TaskNode node;
    node.id = static_cast<TaskId>(i);
    node.stmt_kind = stmt.kind;
    node.binds_name = stmt.name;
    node.rhs = stmt.rhs;
    node.purity = stmt.kind == StmtKind::Bind
                      ? Purity::Effectful
                      : (stmt.kind == StmtKind::Bare ? expr_purity(*stmt.rhs, symbols)
                                                     : Purity::Pure);

    if (const auto* call = std::get_if<CallExpr>(&stmt.rhs->node)) {
      node.callee = call->callee;
    } else if (const auto* var = std::get_if<Var>(&stmt.rhs->node)) {
      if (symbols.count(var->name) != 0) node.callee = var->name;
    }

    for (const auto& name : free_vars(*stmt.rhs, symbols)) {
      auto it = binder_of.find(name);
      if (it == binder_of.end()) {
        throw GraphError("free variable '" + name + "' has no earlier binder", stmt.pos);
      }
      node.deps.push_back(Dep{Dep::Kind::Data, it->second, name});
    }
    if (node.purity == Purity::Effectful) {
      node.deps.push_back(Dep{Dep::Kind::World, last_effectful, ""});
      last_effectful = node.id;
      g.world_chain.push_back(node.id);
    }
    std::sort(node.deps.begin(), node.deps.end());

    if (!stmt.name.empty()) binder_of[stmt.name] = node.id;
    g.nodes.push_back(std::move(node));
  }
  return g;
}

std::vector<TaskId> toposort(const DepGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<TaskId>> out_edges(n);
  for (const auto& node : g.nodes) {
    for (const auto& dep : node.deps) {
      if (dep.from == kInitialWorld) continue;
      out_edges[static_cast<std::size_t>(dep.from)].push_back(node.id);
      ++indegree[static_cast<std::size_t>(node.id)];
    }
  }
  std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> avail;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) avail.push(static_cast<TaskId>(i));
  }
  std::vector<TaskId> order;
  order.reserve(n);
  while (!avail.empty()) {
    TaskId t = avail.top();
    avail.pop();
    order.push_back(t);
    for (TaskId next : out_edges[static_cast<std::size_t>(t)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) avail.push(next);
    }
  }
  if (order.size() != n) {
    throw GraphError("internal: dependency cycle detected in graph for '" + g.entry + "'");
  }
  return order;
}

std::string to_dot(const DepGraph& g) {
  std::string out = "digraph deps {\n";
  out += "  world [label=\"InitialWorld\"];\n";
  for (const auto& node : g.nodes) {
    std::string label = node.callee.empty() ? stmt_kind_word(node.stmt_kind) : node.callee;
    out += "  n" + std::to_string(node.id) + " [label=\"" + std::to_string(node.id) + ": " +
           label + "\"];\n";
  }
  struct Edge {
    TaskId from;
    TaskId to;
    std::string label;
    bool world;
  };
  std::vector<Edge> edges;
  for (const auto& node : g.nodes) {
    for (const auto& dep : node.deps) {
      if (dep.kind == Dep::Kind::World) {
        edges.push_back(Edge{dep.from, node.id, "RealWorld", true});
      } else {
        edges.push_back(Edge{dep.from, node.id, dep.name, false});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to, a.label) < std::tie(b.from, b.to, b.label);
  });
  for (const auto& e : edges) {
    std::string from = e.from == kInitialWorld ? "world" : "n" + std::to_string(e.from);
    out += "  " + from + " -> n" + std::to_string(e.to);
    if (e.world) {
      out += " [style=dashed, label=\"RealWorld\"];\n";
    } else {
      out += " [label=\"" + e.label + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace apar
