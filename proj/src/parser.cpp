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

#include "apar/parser.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apar/kernels.hpp"
#include "apar/lexer.hpp"

namespace apar {

namespace {

struct Line {
  int indent = 0;  // column of the first token
  std::vector<Token> tokens;
};

std::vector<Line> group_lines(std::vector<Token> tokens) {
  std::vector<Line> lines;
  for (auto& t : tokens) {
    if (lines.empty() || lines.back().tokens.back().line != t.line) {
      lines.push_back(Line{t.col, {}});
    }
    lines.back().tokens.push_back(std::move(t));
  }
  return lines;
}

// Cursor over one line's tokens. Statements and signatures never span lines.
class LineCursor {
 public:
  explicit LineCursor(const Line& line) : toks_(line.tokens) {}

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    if (at_end()) throw ParseError("unexpected end of line", end_pos());
    return toks_[pos_];
  }
  bool peek_is(TokKind k) const { return !at_end() && toks_[pos_].kind == k; }
  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  const Token& expect(TokKind k, const char* what) {
    if (!peek_is(k)) {
      if (at_end()) {
        throw ParseError(std::string("expected ") + what + " at end of line", end_pos());
      }
      throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'",
                       pos_of(peek()));
    }
    return next();
  }
  SourcePos end_pos() const {
    if (toks_.empty()) return {};
    const Token& last = toks_.back();
    return SourcePos{last.line, last.col + static_cast<int>(last.text.size())};
  }
  static SourcePos pos_of(const Token& t) { return SourcePos{t.line, t.col}; }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

// ---- types ----

TypePtr parse_type(LineCursor& cur);

TypePtr parse_atype(LineCursor& cur) {
  const Token& t = cur.peek();
  switch (t.kind) {
    case TokKind::KwInt:
      cur.next();
      return mk_type(TInt{});
    case TokKind::KwMatrix:
      cur.next();
      return mk_type(TMatrix{});
    case TokKind::KwSummary:
      cur.next();
      return mk_type(TSummary{});
    case TokKind::KwIO: {
      cur.next();
      return mk_type(TIO{parse_atype(cur)});
    }
    case TokKind::LParen: {
      cur.next();
      if (cur.peek_is(TokKind::RParen)) {
        cur.next();
        return mk_type(TUnit{});
      }
      std::vector<TypePtr> elems;
      elems.push_back(parse_type(cur));
      while (cur.peek_is(TokKind::Comma)) {
        cur.next();
        elems.push_back(parse_type(cur));
      }
      cur.expect(TokKind::RParen, "')'");
      if (elems.size() == 1) return elems[0];
      return mk_type(TTuple{std::move(elems)});
    }
    default:
      throw ParseError("expected a type, found '" + t.text + "'", LineCursor::pos_of(t));
  }
}

TypePtr parse_type(LineCursor& cur) {
  TypePtr left = parse_atype(cur);
  if (cur.peek_is(TokKind::Arrow)) {
    cur.next();
    return mk_type(TArrow{std::move(left), parse_type(cur)});
  }
  return left;
}

int count_io(const TypeExpr& t) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TTuple>) {
          int n = 0;
          for (const auto& e : x.elements) n += count_io(*e);
          return n;
        } else if constexpr (std::is_same_v<T, TIO>) {
          return 1 + count_io(*x.inner);
        } else if constexpr (std::is_same_v<T, TArrow>) {
          return count_io(*x.param) + count_io(*x.result);
        } else {
          return 0;
        }
      },
      t.node);
}

// IO may appear only as the final result of the signature's arrow chain,
// and never nested.
void validate_signature(const TypeExpr& sig, SourcePos pos) {
  const TypeExpr* cur = &sig;
  while (const auto* arrow = std::get_if<TArrow>(&cur->node)) {
    if (count_io(*arrow->param) > 0) {
      throw ParseError("IO is not allowed in parameter position", pos);
    }
    cur = arrow->result.get();
  }
  if (const auto* io = std::get_if<TIO>(&cur->node)) {
    if (count_io(*io->inner) > 0) throw ParseError("nested IO is not allowed", pos);
  } else if (count_io(*cur) > 0) {
    throw ParseError("IO is only allowed as the final result of a signature", pos);
  }
}

// ---- expressions ----

ExprPtr parse_expr(LineCursor& cur);

bool starts_atom(const LineCursor& cur) {
  if (cur.at_end()) return false;
  switch (cur.peek().kind) {
    case TokKind::Ident:
    case TokKind::IntLit:
    case TokKind::LParen:
    case TokKind::KwIf:
      return true;
    default:
      return false;
  }
}

ExprPtr parse_atom(LineCursor& cur) {
  const Token& t = cur.peek();
  switch (t.kind) {
    case TokKind::Ident:
      cur.next();
      return mk_expr(Var{t.text}, LineCursor::pos_of(t));
    case TokKind::IntLit:
      cur.next();
      return mk_expr(Lit{t.int_value}, LineCursor::pos_of(t));
    case TokKind::KwIf: {
      cur.next();
      ExprPtr cond = parse_expr(cur);
      cur.expect(TokKind::KwThen, "'then'");
      ExprPtr then_branch = parse_expr(cur);
      cur.expect(TokKind::KwElse, "'else'");
      ExprPtr else_branch = parse_expr(cur);
      return mk_expr(IfExpr{std::move(cond), std::move(then_branch), std::move(else_branch)},
                     LineCursor::pos_of(t));
    }
    case TokKind::LParen: {
      cur.next();
      std::vector<ExprPtr> elems;
      elems.push_back(parse_expr(cur));
      while (cur.peek_is(TokKind::Comma)) {
        cur.next();
        elems.push_back(parse_expr(cur));
      }
      cur.expect(TokKind::RParen, "')'");
      if (elems.size() == 1) return elems[0];
      return mk_expr(TupleExpr{std::move(elems)}, LineCursor::pos_of(t));
    }
    default:
      throw ParseError("expected an expression, found '" + t.text + "'",
                       LineCursor::pos_of(t));
  }
}

ExprPtr parse_app(LineCursor& cur) {
  SourcePos pos = LineCursor::pos_of(cur.peek());
  ExprPtr head = parse_atom(cur);
  if (!starts_atom(cur)) return head;
  const auto* var = std::get_if<Var>(&head->node);
  if (var == nullptr) {
    throw ParseError("only named functions can be applied", pos);
  }
  std::vector<ExprPtr> args;
  while (starts_atom(cur)) args.push_back(parse_atom(cur));
  return mk_expr(CallExpr{var->name, std::move(args)}, pos);
}

ExprPtr parse_mul(LineCursor& cur) {
  ExprPtr lhs = parse_app(cur);
  while (cur.peek_is(TokKind::Star)) {
    SourcePos pos = LineCursor::pos_of(cur.next());
    lhs = mk_expr(BinOp{BinOpKind::Mul, std::move(lhs), parse_app(cur)}, pos);
  }
  return lhs;
}

ExprPtr parse_expr(LineCursor& cur) {
  ExprPtr lhs = parse_mul(cur);
  while (cur.peek_is(TokKind::Plus) || cur.peek_is(TokKind::Minus)) {
    const Token& op = cur.next();
    BinOpKind kind = op.kind == TokKind::Plus ? BinOpKind::Add : BinOpKind::Sub;
    lhs = mk_expr(BinOp{kind, std::move(lhs), parse_mul(cur)}, LineCursor::pos_of(op));
  }
  return lhs;
}

ExprPtr parse_whole_line_expr(LineCursor& cur) {
  ExprPtr e = parse_expr(cur);
  if (!cur.at_end()) {
    throw ParseError("unexpected '" + cur.peek().text + "' after expression",
                     LineCursor::pos_of(cur.peek()));
  }
  return e;
}

Stmt parse_stmt(const Line& line) {
  LineCursor cur(line);
  const Token& first = cur.peek();
  Stmt stmt;
  stmt.pos = LineCursor::pos_of(first);
  if (first.kind == TokKind::KwLet) {
    cur.next();
    const Token& name = cur.expect(TokKind::Ident, "a binder name after 'let'");
    cur.expect(TokKind::Equals, "'='");
    stmt.kind = StmtKind::Let;
    stmt.name = name.text;
    stmt.rhs = parse_whole_line_expr(cur);
    return stmt;
  }
  if (first.kind == TokKind::Ident && line.tokens.size() > 1 &&
      line.tokens[1].kind == TokKind::BindArrow) {
    cur.next();
    cur.next();
    stmt.kind = StmtKind::Bind;
    stmt.name = first.text;
    stmt.rhs = parse_whole_line_expr(cur);
    return stmt;
  }
  stmt.kind = StmtKind::Bare;
  stmt.rhs = parse_whole_line_expr(cur);
  return stmt;
}

}  // namespace

Program parse_program(std::string_view source) {
  Program program;
  program.source = std::string(source);
  for (const auto& b : builtin_table()) program.builtin_names.push_back(b.name);

  std::vector<Line> lines = group_lines(tokenize(source));

  struct PendingSig {
    TypePtr type;
    SourcePos pos;
    bool used = false;
  };
  std::map<std::string, PendingSig> sigs;
  std::set<std::string> def_names;

  std::size_t li = 0;
  while (li < lines.size()) {
    const Line& line = lines[li];
    LineCursor cur(line);
    const Token& head = cur.peek();
    if (head.kind != TokKind::Ident) {
      throw ParseError("expected a definition or type signature, found '" + head.text + "'",
                       LineCursor::pos_of(head));
    }
    const std::string name = head.text;
    const SourcePos head_pos = LineCursor::pos_of(head);
    cur.next();

    if (cur.peek_is(TokKind::DColon)) {
      cur.next();
      TypePtr type = parse_type(cur);
      if (!cur.at_end()) {
        throw ParseError("unexpected '" + cur.peek().text + "' after type signature",
                         LineCursor::pos_of(cur.peek()));
      }
      validate_signature(*type, head_pos);
      if (sigs.count(name) != 0) {
        throw ParseError("duplicate signature for '" + name + "'", head_pos);
      }
      if (find_builtin(name) != nullptr) {
        throw ParseError("'" + name + "' is a builtin and cannot be redefined", head_pos);
      }
      sigs.emplace(name, PendingSig{std::move(type), head_pos, false});
      ++li;
      continue;
    }

    // definition: name { params } = body
    FuncDef def;
    def.name = name;
    def.pos = head_pos;
    while (cur.peek_is(TokKind::Ident)) def.params.push_back(cur.next().text);
    cur.expect(TokKind::Equals, "'='");

    if (def_names.count(name) != 0) {
      throw ParseError("duplicate definition of '" + name + "'", head_pos);
    }
    if (find_builtin(name) != nullptr) {
      throw ParseError("'" + name + "' is a builtin and cannot be redefined", head_pos);
    }
    auto sig_it = sigs.find(name);
    if (sig_it == sigs.end()) {
      throw ParseError("definition of '" + name + "' has no type signature", head_pos);
    }
    sig_it->second.used = true;
    def.signature = sig_it->second.type;

    if (static_cast<int>(def.params.size()) != arity_of(*def.signature)) {
      throw ParseError("'" + name + "' takes " + std::to_string(def.params.size()) +
                           " parameters but its signature has " +
                           std::to_string(arity_of(*def.signature)),
                       head_pos);
    }

    if (cur.peek_is(TokKind::KwDo)) {
      const Token& kw = cur.next();
      if (!cur.at_end()) {
        throw ParseError("'do' must be the last token on its line",
                         LineCursor::pos_of(cur.peek()));
      }
      if (purity_of(*def.signature) != Purity::Effectful) {
        throw ParseError("do-block in a non-IO function '" + name + "'",
                         LineCursor::pos_of(kw));
      }
      def.has_do = true;
      ++li;
      while (li < lines.size() && lines[li].indent > line.indent) {
        def.body_stmts.push_back(parse_stmt(lines[li]));
        ++li;
      }
    } else {
      def.body_expr = parse_whole_line_expr(cur);
      ++li;
    }
    def_names.insert(name);
    program.defs.push_back(std::move(def));
  }

  for (const auto& [sig_name, sig] : sigs) {
    if (!sig.used) {
      throw ParseError("signature for '" + sig_name + "' has no definition", sig.pos);
    }
  }
  return program;
}

std::string render_program(const Program& p) {
  std::string out;
  for (std::size_t i = 0; i < p.defs.size(); ++i) {
    const FuncDef& def = p.defs[i];
    if (i > 0) out += "\n";
    out += def.name + " :: " + render_type(*def.signature) + "\n";
    out += def.name;
    for (const auto& param : def.params) out += " " + param;
    out += " = ";
    if (def.has_do) {
      out += "do\n";
      for (const auto& stmt : def.body_stmts) {
        out += "    " + render_stmt(stmt) + "\n";
      }
    } else {
      out += render_expr(*def.body_expr) + "\n";
    }
  }
  return out;
}

namespace {

bool stmt_equal(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && expr_equal(*a.rhs, *b.rhs);
}

bool def_equal(const FuncDef& a, const FuncDef& b) {
  if (a.name != b.name || a.params != b.params || a.has_do != b.has_do) return false;
  if (!type_equal(*a.signature, *b.signature)) return false;
  if (a.has_do) {
    if (a.body_stmts.size() != b.body_stmts.size()) return false;
    for (std::size_t i = 0; i < a.body_stmts.size(); ++i) {
      if (!stmt_equal(a.body_stmts[i], b.body_stmts[i])) return false;
    }
    return true;
  }
  return expr_equal(*a.body_expr, *b.body_expr);
}

}  // namespace

bool program_equal(const Program& a, const Program& b) {
  if (a.defs.size() != b.defs.size()) return false;
  for (std::size_t i = 0; i < a.defs.size(); ++i) {
    if (!def_equal(a.defs[i], b.defs[i])) return false;
  }
  return a.builtin_names == b.builtin_names;
}

}  // namespace apar
