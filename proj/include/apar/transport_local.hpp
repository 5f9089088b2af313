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

#include <string>
#include <vector>

#include "apar/sched.hpp"

namespace apar {

struct RunOutcome {
  Value value;
  std::string output;
  std::vector<SchedEvent> trace;
};

// Executes the graph on num_workers in-process worker threads that share no
// mutable state with the coordinator. Completions are ingested in dispatch
// order, so for a fixed (program, worker count) the event trace is identical
// across runs regardless of thread timing, while independent tasks still
// compute in parallel.
RunOutcome run_local(const Program& program, const SymbolTable& symbols,
                     const DepGraph& graph, int num_workers,
                     const EvalOptions& opts = {});

}  // namespace apar
