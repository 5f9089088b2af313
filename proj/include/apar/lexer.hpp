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
#include <string>
#include <string_view>
#include <vector>

#include "apar/error.hpp"

namespace apar {

enum class TokKind {
  Ident,
  IntLit,
  KwDo,
  KwLet,
  KwIf,
  KwThen,
  KwElse,
  KwIO,
  KwInt,
  KwMatrix,
  KwSummary,
  DColon,     // ::
  Arrow,      // ->
  BindArrow,  // <-
  Equals,
  LParen,
  RParen,
  Comma,
  Plus,
  Minus,
  Star,
};

struct Token {
  TokKind kind;
  std::string text;           // source spelling
  std::int64_t int_value = 0;  // IntLit only
  int line = 0;                // 1-based
  int col = 0;                 // 1-based; the column of the first token on a
                               // line is that line's indentation marker
};

const char* tok_kind_name(TokKind k);

// Comments (-- to end of line) and blank lines are discarded. Integer
// literals that overflow 64-bit signed range are rejected.
std::vector<Token> tokenize(std::string_view source);

}  // namespace apar
