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
#include <functional>
#include <string>
#include <vector>

namespace apar {

// K independent matrix tasks (seeds i and 1000+i), a folding sum, and a
// final print:
//   main :: IO ()
//   main = do
//       let c1 = checksum (matMul (genMatrix 1 n n) (genMatrix 1001 n n))
//       ...
//       let total = c1 + ... + cK
//       print total
std::string synthesize_bench_program(int tasks, int size);

struct BenchRow {
  std::string mode;  // "seq" or "local"
  int workers = 1;
  int tasks = 0;
  int size = 0;
  double wall_ms = 0.0;
  std::int64_t result_checksum = 0;
};

struct BenchOptions {
  int tasks = 4;
  int size = 64;
  std::vector<int> workers = {1, 2, 4};
  int reps = 1;  // timed repetitions after one warm-up; the minimum is kept
};

// One seq row (reference interpreter) followed by one local row per worker
// count, each after a warm-up run. Throws if any run fails or the rows'
// checksums disagree.
std::vector<BenchRow> run_bench(const BenchOptions& opts,
                                const std::function<void(const BenchRow&)>& on_row = {});

// CSV with a header comment; columns: mode,workers,tasks,size,wall_ms,result_checksum.
std::string bench_csv(const std::vector<BenchRow>& rows, const BenchOptions& opts);

}  // namespace apar
