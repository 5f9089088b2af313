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

#include "apar/lexer.hpp"

#include <cctype>
#include <cstdint>
#include <map>

namespace apar {

const char* tok_kind_name(TokKind k) {
  switch (k) {
    case TokKind::Ident:
      return "identifier";
    case TokKind::IntLit:
      return "integer";
    case TokKind::KwDo:
      return "'do'";
    case TokKind::KwLet:
      return "'let'";
    case TokKind::KwIf:
      return "'if'";
    case TokKind::KwThen:
      return "'then'";
    case TokKind::KwElse:
      return "'else'";
    case TokKind::KwIO:
      return "'IO'";
    case TokKind::KwInt:
      return "'Int'";
    case TokKind::KwMatrix:
      return "'Matrix'";
    case TokKind::KwSummary:
      return "'Summary'";
    case TokKind::DColon:
      return "'::'";
    case TokKind::Arrow:
      return "'->'";
    case TokKind::BindArrow:
      return "'<-'";
    case TokKind::Equals:
      return "'='";
    case TokKind::LParen:
      return "'('";
    case TokKind::RParen:
      return "')'";
    case TokKind::Comma:
      return "','";
    case TokKind::Plus:
      return "'+'";
    case TokKind::Minus:
      return "'-'";
    case TokKind::Star:
      return "'*'";
  }
  return "token";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::map<std::string, TokKind>& keyword_map() {
  static const std::map<std::string, TokKind> kw = {
      {"do", TokKind::KwDo},     {"let", TokKind::KwLet},        {"if", TokKind::KwIf},
      {"then", TokKind::KwThen}, {"else", TokKind::KwElse},      {"IO", TokKind::KwIO},
      {"Int", TokKind::KwInt},   {"Matrix", TokKind::KwMatrix},  {"Summary", TokKind::KwSummary},
  };
  return kw;
}

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  const std::size_t n = source.size();

  auto push = [&](TokKind kind, std::string text, int tok_col, std::int64_t value = 0) {
    tokens.push_back(Token{kind, std::move(text), value, line, tok_col});
  };

  while (i < n) {
    char c = source[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && source[i + 1] == '-') {
      while (i < n && source[i] != '\n') ++i;
      continue;  // newline handled above
    }
    int start_col = col;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < n && is_ident_char(source[j])) ++j;
      std::string word(source.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      auto kw = keyword_map().find(word);
      push(kw != keyword_map().end() ? kw->second : TokKind::Ident, std::move(word), start_col);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t value = 0;
      bool overflow = false;
      while (j < n && std::isdigit(static_cast<unsigned char>(source[j]))) {
        value = value * 10 + static_cast<std::uint64_t>(source[j] - '0');
        if (value > 0x7FFFFFFFFFFFFFFFULL) overflow = true;
        ++j;
      }
      if (overflow || j - i > 19) {
        throw LexError("integer literal overflows 64-bit signed range",
                       SourcePos{line, start_col});
      }
      std::string text(source.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      push(TokKind::IntLit, std::move(text), start_col, static_cast<std::int64_t>(value));
      continue;
    }
    auto two = [&](char second) { return i + 1 < n && source[i + 1] == second; };
    switch (c) {
      case ':':
        if (two(':')) {
          push(TokKind::DColon, "::", start_col);
          i += 2;
          col += 2;
          continue;
        }
        break;
      case '-':
        if (two('>')) {
          push(TokKind::Arrow, "->", start_col);
          i += 2;
          col += 2;
          continue;
        }
        push(TokKind::Minus, "-", start_col);
        ++i;
        ++col;
        continue;
      case '<':
        if (two('-')) {
          push(TokKind::BindArrow, "<-", start_col);
          i += 2;
          col += 2;
          continue;
        }
        break;
      case '=':
        push(TokKind::Equals, "=", start_col);
        ++i;
        ++col;
        continue;
      case '(':
        push(TokKind::LParen, "(", start_col);
        ++i;
        ++col;
        continue;
      case ')':
        push(TokKind::RParen, ")", start_col);
        ++i;
        ++col;
        continue;
      case ',':
        push(TokKind::Comma, ",", start_col);
        ++i;
        ++col;
        continue;
      case '+':
        push(TokKind::Plus, "+", start_col);
        ++i;
        ++col;
        continue;
      case '*':
        push(TokKind::Star, "*", start_col);
        ++i;
        ++col;
        continue;
      default:
        break;
    }
    throw LexError("unrecognized character '" + std::string(1, c) + "'",
                   SourcePos{line, start_col});
  }
  return tokens;
}

}  // namespace apar
