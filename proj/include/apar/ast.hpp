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
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "apar/error.hpp"
#include "apar/value.hpp"

namespace apar {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

struct TInt {};
struct TUnit {};
struct TMatrix {};
struct TSummary {};
struct TTuple {
  std::vector<TypePtr> elements;
};
struct TIO {
  TypePtr inner;
};
// Arrow chains associate to the right: A -> B -> C is TArrow(A, TArrow(B, C)).
struct TArrow {
  TypePtr param;
  TypePtr result;
};

struct TypeExpr {
  std::variant<TInt, TUnit, TMatrix, TSummary, TTuple, TIO, TArrow> node;
};

template <typename T>
TypePtr mk_type(T node) {
  return std::make_shared<TypeExpr>(TypeExpr{std::move(node)});
}

enum class Purity { Pure, Effectful };

// Effectful iff the rightmost result of the arrow chain is IO.
Purity purity_of(const TypeExpr& signature);

// The rightmost result of the arrow chain.
const TypeExpr& result_type(const TypeExpr& signature);

// Number of arrow parameters along the spine.
int arity_of(const TypeExpr& signature);

bool type_equal(const TypeExpr& a, const TypeExpr& b);
std::string render_type(const TypeExpr& t);

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOpKind { Add, Sub, Mul };

struct Lit {
  std::int64_t value = 0;
};
struct Var {
  std::string name;
};
struct TupleExpr {
  std::vector<ExprPtr> elements;
};
struct CallExpr {
  std::string callee;
  std::vector<ExprPtr> args;
};
struct IfExpr {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};
struct BinOp {
  BinOpKind op;
  ExprPtr lhs;
  ExprPtr rhs;
};
// A literal runtime value. Never produced by the parser; used in task
// payloads shipped to workers, where free variables are replaced by the
// values they were bound to.
struct ValueLit {
  Value value;
};

struct Expr {
  std::variant<Lit, Var, TupleExpr, CallExpr, IfExpr, BinOp, ValueLit> node;
  SourcePos pos;
};

template <typename T>
ExprPtr mk_expr(T node, SourcePos pos = {}) {
  return std::make_shared<Expr>(Expr{std::move(node), pos});
}

// Structural equality; source positions are ignored.
bool expr_equal(const Expr& a, const Expr& b);

// Renders an expression in concrete syntax such that re-parsing yields a
// structurally identical tree. ValueLit cannot be rendered and throws.
std::string render_expr(const Expr& e);

const char* binop_name(BinOpKind op);  // "+", "-", "*"

// ---------------------------------------------------------------------------
// Statements and definitions
// ---------------------------------------------------------------------------

enum class StmtKind { Bind, Let, Bare };

struct Stmt {
  StmtKind kind = StmtKind::Bare;
  std::string name;  // binder for Bind/Let, empty for Bare
  ExprPtr rhs;
  SourcePos pos;
};

std::string render_stmt(const Stmt& s);

struct FuncDef {
  std::string name;
  std::vector<std::string> params;
  TypePtr signature;  // mandatory
  bool has_do = false;
  std::vector<Stmt> body_stmts;  // when has_do
  ExprPtr body_expr;             // when !has_do
  SourcePos pos;
};

struct Program {
  std::vector<FuncDef> defs;               // source order
  std::vector<std::string> builtin_names;  // provided by the kernels module
  std::string source;                      // the exact source text parsed

  const FuncDef* find(const std::string& name) const;
};

}  // namespace apar
