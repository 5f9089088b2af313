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

#include "apar/resolve.hpp"

#include <set>
#include <string>
#include <variant>

#include "apar/kernels.hpp"

namespace apar {

namespace {

using Scope = std::set<std::string>;

void check_expr(const Expr& e, const Scope& scope, const SymbolTable& symbols) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          if (scope.count(x.name) != 0) return;
          auto it = symbols.find(x.name);
          if (it == symbols.end()) {
            throw ResolveError("unknown identifier '" + x.name + "'", e.pos);
          }
          if (it->second.arity != 0) {
            throw ResolveError("'" + x.name + "' expects " +
                                   std::to_string(it->second.arity) + " arguments, got 0",
                               e.pos);
          }
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          if (scope.count(x.callee) != 0) {
            throw ResolveError("'" + x.callee + "' is a local value, not a function", e.pos);
          }
          auto it = symbols.find(x.callee);
          if (it == symbols.end()) {
            throw ResolveError("unknown identifier '" + x.callee + "'", e.pos);
          }
          if (it->second.arity != static_cast<int>(x.args.size())) {
            throw ResolveError("'" + x.callee + "' expects " +
                                   std::to_string(it->second.arity) + " arguments, got " +
                                   std::to_string(x.args.size()),
                               e.pos);
          }
          for (const auto& arg : x.args) check_expr(*arg, scope, symbols);
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          for (const auto& el : x.elements) check_expr(*el, scope, symbols);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          check_expr(*x.cond, scope, symbols);
          check_expr(*x.then_branch, scope, symbols);
          check_expr(*x.else_branch, scope, symbols);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          check_expr(*x.lhs, scope, symbols);
          check_expr(*x.rhs, scope, symbols);
        }
        // Lit, ValueLit: nothing to bind
      },
      e.node);
}

// The callee name when the expression is a call form (a call, or a reference
// to a nullary function); nullptr otherwise.
const std::string* call_form_callee(const Expr& e, const SymbolTable& symbols) {
  if (const auto* call = std::get_if<CallExpr>(&e.node)) return &call->callee;
  if (const auto* var = std::get_if<Var>(&e.node)) {
    if (symbols.count(var->name) != 0) return &var->name;
  }
  return nullptr;
}

// Effectful calls may appear only as the whole RHS of a bind or bare
// statement (or the whole body of an effectful function); arguments stay
// pure. `e` was already scope-checked.
void require_pure(const Expr& e, const SymbolTable& symbols, const char* where) {
  if (expr_purity(e, symbols) == Purity::Effectful) {
    throw ResolveError(std::string("purity violation: effectful call in ") + where, e.pos);
  }
}

void check_effectful_call_form(const Expr& e, const SymbolTable& symbols, const char* where) {
  const std::string* callee = call_form_callee(e, symbols);
  if (callee == nullptr) {
    throw ResolveError(std::string(where) + " requires a function call", e.pos);
  }
  if (symbols.at(*callee).purity != Purity::Effectful) {
    throw ResolveError("purity violation: pure call to '" + *callee + "' in " + where, e.pos);
  }
  if (const auto* call = std::get_if<CallExpr>(&e.node)) {
    for (const auto& arg : call->args) require_pure(*arg, symbols, "a call argument");
  }
}

void check_def(const FuncDef& def, const SymbolTable& symbols) {
  Scope scope;
  for (const auto& param : def.params) {
    if (scope.count(param) != 0) {
      throw ResolveError("duplicate parameter '" + param + "' in '" + def.name + "'", def.pos);
    }
    if (symbols.count(param) != 0) {
      throw ResolveError("parameter '" + param + "' shadows a top-level name", def.pos);
    }
    scope.insert(param);
  }

  const bool effectful = symbols.at(def.name).purity == Purity::Effectful;

  if (!def.has_do) {
    check_expr(*def.body_expr, scope, symbols);
    if (!effectful) {
      require_pure(*def.body_expr, symbols, "a pure function body");
    } else if (expr_purity(*def.body_expr, symbols) == Purity::Effectful) {
      check_effectful_call_form(*def.body_expr, symbols, "an effectful function body");
    }
    return;
  }

  for (const auto& stmt : def.body_stmts) {
    if (stmt.kind != StmtKind::Bare) {
      if (scope.count(stmt.name) != 0) {
        throw ResolveError("'" + stmt.name + "' is bound more than once", stmt.pos);
      }
      if (symbols.count(stmt.name) != 0) {
        throw ResolveError("binder '" + stmt.name + "' shadows a top-level name", stmt.pos);
      }
    }
    check_expr(*stmt.rhs, scope, symbols);
    switch (stmt.kind) {
      case StmtKind::Bind:
        check_effectful_call_form(*stmt.rhs, symbols, "'<-'");
        break;
      case StmtKind::Let:
        require_pure(*stmt.rhs, symbols, "a let binding");
        break;
      case StmtKind::Bare:
        if (expr_purity(*stmt.rhs, symbols) == Purity::Effectful) {
          check_effectful_call_form(*stmt.rhs, symbols, "a statement");
        }
        break;
    }
    if (stmt.kind != StmtKind::Bare) scope.insert(stmt.name);
  }
}

}  // namespace

Purity expr_purity(const Expr& e, const SymbolTable& symbols) {
  return std::visit(
      [&](const auto& x) -> Purity {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          auto it = symbols.find(x.name);
          if (it != symbols.end() && it->second.purity == Purity::Effectful) {
            return Purity::Effectful;
          }
          return Purity::Pure;
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          auto it = symbols.find(x.callee);
          if (it != symbols.end() && it->second.purity == Purity::Effectful) {
            return Purity::Effectful;
          }
          for (const auto& arg : x.args) {
            if (expr_purity(*arg, symbols) == Purity::Effectful) return Purity::Effectful;
          }
          return Purity::Pure;
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          for (const auto& el : x.elements) {
            if (expr_purity(*el, symbols) == Purity::Effectful) return Purity::Effectful;
          }
          return Purity::Pure;
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          if (expr_purity(*x.cond, symbols) == Purity::Effectful) return Purity::Effectful;
          if (expr_purity(*x.then_branch, symbols) == Purity::Effectful) {
            return Purity::Effectful;
          }
          return expr_purity(*x.else_branch, symbols);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          if (expr_purity(*x.lhs, symbols) == Purity::Effectful) return Purity::Effectful;
          return expr_purity(*x.rhs, symbols);
        } else {
          return Purity::Pure;
        }
      },
      e.node);
}

SymbolTable resolve(const Program& program) {
  SymbolTable symbols;
  for (const auto& b : builtin_table()) {
    symbols[b.name] = SymbolInfo{b.arity, b.purity, SymbolKind::Builtin};
  }
  for (const auto& def : program.defs) {
    symbols[def.name] =
        SymbolInfo{static_cast<int>(def.params.size()), purity_of(*def.signature),
                   SymbolKind::User};
  }
  for (const auto& def : program.defs) check_def(def, symbols);
  return symbols;
}

}  // namespace apar
