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
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apar/depgraph.hpp"
#include "apar/interp.hpp"

namespace apar {

using WorkerId = int;

enum class TaskStateKind { Blocked, Ready, Running, Done };

struct SchedEvent {
  enum class Kind { WorkerJoined, Dispatched, Completed, Finished };
  int seq = 0;  // dense from 0
  Kind kind = Kind::Finished;
  TaskId task = -1;                // Dispatched/Completed
  std::optional<WorkerId> worker;  // empty on Dispatched/Completed when the
                                   // coordinator folded the task inline
};

const char* sched_event_name(SchedEvent::Kind k);

// A unit of work to transmit to a worker. The payload is the task's RHS with
// every free variable replaced by its stored value, so workers need no state
// beyond the loaded program.
struct Assignment {
  int seq = 0;  // the Dispatched event's seq; transports use it for ordering
  TaskId task = -1;
  WorkerId worker = -1;
  ExprPtr payload;
};

// The greedy input-ready coordinator state machine. Single-owner: callers
// must serialize all calls (transports funnel worker events through one
// loop). A task becomes Ready when its Data sources are Done and, for
// effectful tasks, its World predecessor is Done. Dispatch pairs the lowest
// Ready task id with the lowest Idle worker id until either side runs out.
// Tasks whose RHS contains no call are evaluated inline by the coordinator
// at dispatch time instead of being shipped; their trace events carry no
// worker id.
class Scheduler {
 public:
  Scheduler(const Program& program, const SymbolTable& symbols, DepGraph graph,
            EvalOptions opts = {});

  // Registers a worker (ids must be unique) and returns any new assignments.
  std::vector<Assignment> on_worker_join(WorkerId worker);

  // Ingests a completed task from a worker and returns any new assignments.
  // The task must currently be Running on exactly that worker.
  std::vector<Assignment> on_result(WorkerId worker, TaskId task, Value value,
                                    const std::string& printed);

  bool is_complete() const;
  // Final value of the highest-id task plus accumulated print output.
  // An empty graph completes immediately with unit.
  std::pair<Value, std::string> final_result() const;

  const std::vector<SchedEvent>& trace() const { return trace_; }
  const DepGraph& graph() const { return graph_; }

  TaskStateKind state_of(TaskId t) const;
  std::vector<TaskId> ready_tasks() const;  // ascending
  int running_count() const;
  int worker_count() const;
  int last_world_done() const { return world_done_; }

 private:
  std::vector<Assignment> pump();
  void apply_completion(TaskId task, Value value, const std::string& printed,
                        std::optional<WorkerId> worker);
  ExprPtr substitute(const ExprPtr& e) const;
  void push_event(SchedEvent::Kind kind, TaskId task, std::optional<WorkerId> worker);

  const Program& program_;
  const SymbolTable& symbols_;
  DepGraph graph_;
  EvalOptions opts_;

  std::vector<TaskStateKind> states_;
  std::vector<WorkerId> running_on_;          // valid while Running
  std::vector<std::optional<Value>> results_;  // valid once Done
  std::vector<int> unmet_;                     // outstanding dep count
  std::vector<std::vector<TaskId>> dependents_;  // one entry per dep edge

  std::set<TaskId> ready_;
  std::map<WorkerId, std::optional<TaskId>> workers_;  // nullopt = idle
  std::map<std::string, Value> values_;                // binder store
  int world_done_ = -1;  // index into world_chain of last completed effectful
  int done_count_ = 0;
  int next_seq_ = 0;
  std::vector<SchedEvent> trace_;
  std::string output_;
};

}  // namespace apar
