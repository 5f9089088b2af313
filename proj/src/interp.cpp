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

#include "apar/interp.hpp"

#include <variant>
#include <vector>

#include "apar/kernels.hpp"

namespace apar {

namespace {

struct EvalCtx {
  const Program& program;
  const SymbolTable& symbols;
  std::string& out;
  const EvalOptions& opts;
};

Value eval(EvalCtx& ctx, const Expr& e, const Env& env, int depth);

Value call_function(EvalCtx& ctx, const std::string& name, std::vector<Value> args,
                    SourcePos pos, int depth) {
  auto it = ctx.symbols.find(name);
  if (it == ctx.symbols.end()) {
    throw EvalError("internal: unresolved callee '" + name + "'", pos);
  }
  if (it->second.kind == SymbolKind::Builtin) {
    return call_builtin(name, args, ctx.out);
  }
  if (depth + 1 > ctx.opts.max_call_depth) {
    throw EvalError("call depth limit exceeded (" + std::to_string(ctx.opts.max_call_depth) +
                        ") calling '" + name + "'",
                    pos);
  }
  const FuncDef* def = ctx.program.find(name);
  if (def == nullptr) throw EvalError("internal: missing definition of '" + name + "'", pos);
  Env local;
  for (std::size_t i = 0; i < def->params.size(); ++i) {
    local.emplace(def->params[i], std::move(args[i]));
  }
  if (!def->has_do) return eval(ctx, *def->body_expr, local, depth + 1);
  if (def->body_stmts.empty()) {
    throw EvalError("body of '" + name + "' is empty", def->pos);
  }
  Value last = v_unit();
  for (const auto& stmt : def->body_stmts) {
    last = eval(ctx, *stmt.rhs, local, depth + 1);
    if (!stmt.name.empty()) local.insert_or_assign(stmt.name, last);
  }
  return last;
}

Value eval(EvalCtx& ctx, const Expr& e, const Env& env, int depth) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Lit>) {
          return v_int(x.value);
        } else if constexpr (std::is_same_v<T, ValueLit>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          auto it = env.find(x.name);
          if (it != env.end()) return it->second;
          if (ctx.symbols.count(x.name) != 0) {
            return call_function(ctx, x.name, {}, e.pos, depth);
          }
          throw EvalError("internal: unbound variable '" + x.name + "'", e.pos);
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          VTuple t;
          t.elements.reserve(x.elements.size());
          for (const auto& el : x.elements) t.elements.push_back(eval(ctx, *el, env, depth));
          return Value{std::move(t)};
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::vector<Value> args;
          args.reserve(x.args.size());
          for (const auto& arg : x.args) args.push_back(eval(ctx, *arg, env, depth));
          return call_function(ctx, x.callee, std::move(args), e.pos, depth);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          Value cond = eval(ctx, *x.cond, env, depth);
          const auto* i = std::get_if<VInt>(&cond.v);
          if (i == nullptr) {
            throw EvalError("if condition must be an integer, got " + render_value(cond),
                            e.pos);
          }
          return i->value != 0 ? eval(ctx, *x.then_branch, env, depth)
                               : eval(ctx, *x.else_branch, env, depth);
        } else {  // BinOp
          Value lv = eval(ctx, *x.lhs, env, depth);
          Value rv = eval(ctx, *x.rhs, env, depth);
          const auto* li = std::get_if<VInt>(&lv.v);
          const auto* ri = std::get_if<VInt>(&rv.v);
          if (li == nullptr || ri == nullptr) {
            throw EvalError(std::string("arithmetic '") + binop_name(x.op) +
                                "' requires integer operands",
                            e.pos);
          }
          switch (x.op) {
            case BinOpKind::Add:
              return v_int(wrap_add(li->value, ri->value));
            case BinOpKind::Sub:
              return v_int(wrap_sub(li->value, ri->value));
            case BinOpKind::Mul:
              return v_int(wrap_mul(li->value, ri->value));
          }
          throw EvalError("internal: unknown operator", e.pos);
        }
      },
      e.node);
}

}  // namespace

Value eval_expr(const Expr& expr, const Env& env, const Program& program,
                const SymbolTable& symbols, std::string& out, const EvalOptions& opts) {
  EvalCtx ctx{program, symbols, out, opts};
  return eval(ctx, expr, env, 0);
}

SeqResult run_sequential(const Program& program, const SymbolTable& symbols,
                         const std::string& entry, const EvalOptions& opts) {
  const FuncDef& def = validate_entry(program, symbols, entry);
  if (def.body_stmts.empty()) throw EvalError("entry body is empty", def.pos);

  SeqResult result;
  Env env;
  EvalCtx ctx{program, symbols, result.output, opts};
  for (std::size_t i = 0; i < def.body_stmts.size(); ++i) {
    const Stmt& stmt = def.body_stmts[i];
    Value v;
    try {
      v = eval(ctx, *stmt.rhs, env, 0);
    } catch (const Error& e) {
      throw EvalError("statement " + std::to_string(i) + ": " + e.what());
    }
    if (!stmt.name.empty()) env.insert_or_assign(stmt.name, v);
    result.steps.emplace_back(static_cast<TaskId>(i), v);
    result.final_value = std::move(v);
  }
  return result;
}

}  // namespace apar
