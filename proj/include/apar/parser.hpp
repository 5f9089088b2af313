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

#include <string_view>

#include "apar/ast.hpp"

namespace apar {

// Parses a whole source file. Layout rule for do-blocks: `do` must be the
// last token on its line; the block consists of the following lines indented
// strictly more than the first column of the defining line, one statement
// per line, and ends at the first line indented less or equal (or EOF).
//
// Every definition requires a preceding type signature. Definitions may not
// be duplicated or shadow a builtin.
Program parse_program(std::string_view source);

// Canonical concrete syntax; re-parsing the result yields an equal Program.
std::string render_program(const Program& p);

// Structural equality; positions and source text are ignored.
bool program_equal(const Program& a, const Program& b);

}  // namespace apar
