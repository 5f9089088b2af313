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

#include "apar/ast.hpp"

#include <variant>

namespace apar {

Purity purity_of(const TypeExpr& signature) {
  return std::holds_alternative<TIO>(result_type(signature).node) ? Purity::Effectful
                                                                  : Purity::Pure;
}

const TypeExpr& result_type(const TypeExpr& signature) {
  const TypeExpr* cur = &signature;
  while (const auto* arrow = std::get_if<TArrow>(&cur->node)) cur = arrow->result.get();
  return *cur;
}

int arity_of(const TypeExpr& signature) {
  int n = 0;
  const TypeExpr* cur = &signature;
  while (const auto* arrow = std::get_if<TArrow>(&cur->node)) {
    ++n;
    cur = arrow->result.get();
  }
  return n;
}

bool type_equal(const TypeExpr& a, const TypeExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, TTuple>) {
          if (x.elements.size() != y.elements.size()) return false;
          for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (!type_equal(*x.elements[i], *y.elements[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, TIO>) {
          return type_equal(*x.inner, *y.inner);
        } else if constexpr (std::is_same_v<T, TArrow>) {
          return type_equal(*x.param, *y.param) && type_equal(*x.result, *y.result);
        } else {
          return true;  // nullary constructors
        }
      },
      a.node);
}

namespace {

// Parenthesized when the type appears in arrow-parameter or IO-argument
// position.
std::string render_atype(const TypeExpr& t) {
  if (std::holds_alternative<TArrow>(t.node)) return "(" + render_type(t) + ")";
  return render_type(t);
}

}  // namespace

std::string render_type(const TypeExpr& t) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TInt>) {
          return "Int";
        } else if constexpr (std::is_same_v<T, TUnit>) {
          return "()";
        } else if constexpr (std::is_same_v<T, TMatrix>) {
          return "Matrix";
        } else if constexpr (std::is_same_v<T, TSummary>) {
          return "Summary";
        } else if constexpr (std::is_same_v<T, TTuple>) {
          std::string out = "(";
          for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (i > 0) out += ", ";
            out += render_type(*x.elements[i]);
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, TIO>) {
          return "IO " + render_atype(*x.inner);
        } else {
          return render_atype(*x.param) + " -> " + render_type(*x.result);
        }
      },
      t.node);
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Lit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          if (x.elements.size() != y.elements.size()) return false;
          for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (!expr_equal(*x.elements[i], *y.elements[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          if (x.callee != y.callee || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!expr_equal(*x.args[i], *y.args[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          return expr_equal(*x.cond, *y.cond) &&
                 expr_equal(*x.then_branch, *y.then_branch) &&
                 expr_equal(*x.else_branch, *y.else_branch);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          return x.op == y.op && expr_equal(*x.lhs, *y.lhs) && expr_equal(*x.rhs, *y.rhs);
        } else {
          return value_equal(x.value, y.value);
        }
      },
      a.node);
}

const char* binop_name(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add:
      return "+";
    case BinOpKind::Sub:
      return "-";
    case BinOpKind::Mul:
      return "*";
  }
  return "?";
}

namespace {

// Precedence levels: 0 if-expressions, 1 additive, 2 multiplicative,
// 3 application, 4 atoms.
int expr_level(const Expr& e) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IfExpr>) {
          return 0;
        } else if constexpr (std::is_same_v<T, BinOp>) {
          return x.op == BinOpKind::Mul ? 2 : 1;
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          return 3;
        } else {
          return 4;
        }
      },
      e.node);
}

std::string render_at(const Expr& e, int min_level);

std::string render_raw(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Lit>) {
          return std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          std::string out = "(";
          for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (i > 0) out += ", ";
            out += render_at(*x.elements[i], 0);
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::string out = x.callee;
          for (const auto& arg : x.args) out += " " + render_at(*arg, 4);
          return out;
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          return "if " + render_at(*x.cond, 1) + " then " + render_at(*x.then_branch, 1) +
                 " else " + render_at(*x.else_branch, 1);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          int lvl = x.op == BinOpKind::Mul ? 2 : 1;
          return render_at(*x.lhs, lvl) + " " + binop_name(x.op) + " " +
                 render_at(*x.rhs, lvl + 1);
        } else {
          throw Error("cannot render an embedded runtime value as source");
        }
      },
      e.node);
}

std::string render_at(const Expr& e, int min_level) {
  std::string s = render_raw(e);
  if (expr_level(e) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

std::string render_expr(const Expr& e) { return render_at(e, 0); }

std::string render_stmt(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Bind:
      return s.name + " <- " + render_expr(*s.rhs);
    case StmtKind::Let:
      return "let " + s.name + " = " + render_expr(*s.rhs);
    case StmtKind::Bare:
      return render_expr(*s.rhs);
  }
  return {};
}

const FuncDef* Program::find(const std::string& name) const {
  for (const auto& def : defs) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

}  // namespace apar
