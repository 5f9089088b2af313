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

#include "apar/ast.hpp"

namespace apar {

enum class SymbolKind { Builtin, User };

struct SymbolInfo {
  int arity = 0;
  Purity purity = Purity::Pure;
  SymbolKind kind = SymbolKind::Builtin;
};

using SymbolTable = std::map<std::string, SymbolInfo>;

// Binds every callee to a builtin or user definition, checks call arities,
// and enforces the effect discipline:
//   - `x <- e` requires e to be an effectful call (builtin or user);
//   - `let x = e` requires e to be free of effectful calls;
//   - a bare statement may be a pure expression or a single effectful call;
//   - call arguments are always pure;
//   - pure functions may not call effectful ones;
//   - parameters and do-block binders may not shadow top-level names, and a
//     binder may not be introduced twice in one block.
SymbolTable resolve(const Program& program);

// Effectful iff any call (or reference to a nullary function) inside the
// expression resolves to an effectful symbol.
Purity expr_purity(const Expr& e, const SymbolTable& symbols);

}  // namespace apar
