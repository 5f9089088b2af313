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

#include <chrono>
#include <memory>
#include <string>

#include "apar/sched.hpp"
#include "apar/transport_local.hpp"

namespace apar {

inline constexpr int kDefaultPort = 7401;

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = kDefaultPort;  // 0 binds an ephemeral port
  int min_workers = 1;
  std::chrono::milliseconds handshake_timeout{30000};
};

// TCP coordinator. Accepts worker connections, performs the
// Hello/HelloAck/LoadProgram handshake, and bridges messages into the
// scheduler. Dispatch does not start until min_workers have joined; workers
// joining later are admitted and used. A worker lost mid-run aborts the run
// (no fault tolerance).
class CoordinatorServer {
 public:
  explicit CoordinatorServer(const ServeOptions& opts);
  ~CoordinatorServer();

  CoordinatorServer(const CoordinatorServer&) = delete;
  CoordinatorServer& operator=(const CoordinatorServer&) = delete;

  int port() const { return port_; }

  RunOutcome run(const Program& program, const SymbolTable& symbols, const DepGraph& graph,
                 const EvalOptions& eopts = {});

 private:
  ServeOptions opts_;
  int listen_fd_ = -1;
  int port_ = 0;
};

// Worker process loop: handshake, load the program, then evaluate Assign
// payloads until Shutdown. Returns the process exit status (0 on a clean
// shutdown). Throws TransportError when the coordinator is unreachable.
int run_worker(const std::string& host, int port);

}  // namespace apar
