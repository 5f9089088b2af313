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

#include "apar/sched.hpp"

#include <variant>

#include "apar/log.hpp"

namespace apar {

const char* sched_event_name(SchedEvent::Kind k) {
  switch (k) {
    case SchedEvent::Kind::WorkerJoined:
      return "WorkerJoined";
    case SchedEvent::Kind::Dispatched:
      return "Dispatched";
    case SchedEvent::Kind::Completed:
      return "Completed";
    case SchedEvent::Kind::Finished:
      return "Finished";
  }
  return "?";
}

Scheduler::Scheduler(const Program& program, const SymbolTable& symbols, DepGraph graph,
                     EvalOptions opts)
    : program_(program), symbols_(symbols), graph_(std::move(graph)), opts_(opts) {
  const std::size_t n = graph_.nodes.size();
  states_.assign(n, TaskStateKind::Blocked);
  running_on_.assign(n, -1);
  results_.assign(n, std::nullopt);
  unmet_.assign(n, 0);
  dependents_.assign(n, {});
  for (const auto& node : graph_.nodes) {
    for (const auto& dep : node.deps) {
      if (dep.from == kInitialWorld) continue;  // satisfied from the start
      ++unmet_[static_cast<std::size_t>(node.id)];
      dependents_[static_cast<std::size_t>(dep.from)].push_back(node.id);
    }
  }
  for (const auto& node : graph_.nodes) {
    if (unmet_[static_cast<std::size_t>(node.id)] == 0) {
      states_[static_cast<std::size_t>(node.id)] = TaskStateKind::Ready;
      ready_.insert(node.id);
    }
  }
  if (n == 0) push_event(SchedEvent::Kind::Finished, -1, std::nullopt);
}

void Scheduler::push_event(SchedEvent::Kind kind, TaskId task, std::optional<WorkerId> worker) {
  SchedEvent ev{next_seq_++, kind, task, worker};
  if (log_level() >= LogLevel::Trace) {
    std::string line = "event " + std::to_string(ev.seq) + " " + sched_event_name(kind);
    if (task >= 0) line += " task=" + std::to_string(task);
    if (worker.has_value()) line += " worker=" + std::to_string(*worker);
    log_trace(line);
  }
  trace_.push_back(std::move(ev));
}

std::vector<Assignment> Scheduler::on_worker_join(WorkerId worker) {
  if (workers_.count(worker) != 0) {
    throw SchedError("duplicate worker id " + std::to_string(worker));
  }
  workers_.emplace(worker, std::nullopt);
  push_event(SchedEvent::Kind::WorkerJoined, -1, worker);
  return pump();
}

std::vector<Assignment> Scheduler::on_result(WorkerId worker, TaskId task, Value value,
                                             const std::string& printed) {
  auto wit = workers_.find(worker);
  if (wit == workers_.end()) {
    throw SchedError("result from unknown worker " + std::to_string(worker));
  }
  if (task < 0 || task >= static_cast<TaskId>(graph_.nodes.size())) {
    throw SchedError("result for unknown task " + std::to_string(task));
  }
  if (states_[static_cast<std::size_t>(task)] != TaskStateKind::Running ||
      running_on_[static_cast<std::size_t>(task)] != worker || wit->second != task) {
    throw SchedError("result for task " + std::to_string(task) + " from worker " +
                     std::to_string(worker) + " which is not running it");
  }
  apply_completion(task, std::move(value), printed, worker);
  wit->second = std::nullopt;
  return pump();
}

void Scheduler::apply_completion(TaskId task, Value value, const std::string& printed,
                                 std::optional<WorkerId> worker) {
  const TaskNode& node = graph_.nodes[static_cast<std::size_t>(task)];
  states_[static_cast<std::size_t>(task)] = TaskStateKind::Done;
  if (!node.binds_name.empty()) values_.insert_or_assign(node.binds_name, value);
  results_[static_cast<std::size_t>(task)] = std::move(value);
  if (node.purity == Purity::Effectful) {
    ++world_done_;
    if (graph_.world_chain[static_cast<std::size_t>(world_done_)] != task) {
      throw SchedError("internal: effect order violated at task " + std::to_string(task));
    }
  }
  output_ += printed;
  push_event(SchedEvent::Kind::Completed, task, worker);
  for (TaskId dep : dependents_[static_cast<std::size_t>(task)]) {
    if (--unmet_[static_cast<std::size_t>(dep)] == 0 &&
        states_[static_cast<std::size_t>(dep)] == TaskStateKind::Blocked) {
      states_[static_cast<std::size_t>(dep)] = TaskStateKind::Ready;
      ready_.insert(dep);
    }
  }
  if (++done_count_ == static_cast<int>(graph_.nodes.size())) {
    push_event(SchedEvent::Kind::Finished, -1, std::nullopt);
  }
}

ExprPtr Scheduler::substitute(const ExprPtr& e) const {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          auto it = values_.find(x.name);
          if (it != values_.end()) return mk_expr(ValueLit{it->second}, e->pos);
          if (symbols_.count(x.name) != 0) return e;  // function reference
          throw SchedError("internal: no value for free variable '" + x.name + "'");
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          TupleExpr out;
          out.elements.reserve(x.elements.size());
          for (const auto& el : x.elements) out.elements.push_back(substitute(el));
          return mk_expr(std::move(out), e->pos);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          CallExpr out{x.callee, {}};
          out.args.reserve(x.args.size());
          for (const auto& arg : x.args) out.args.push_back(substitute(arg));
          return mk_expr(std::move(out), e->pos);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          return mk_expr(IfExpr{substitute(x.cond), substitute(x.then_branch),
                                substitute(x.else_branch)},
                         e->pos);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          return mk_expr(BinOp{x.op, substitute(x.lhs), substitute(x.rhs)}, e->pos);
        } else {
          return e;  // Lit, ValueLit
        }
      },
      e->node);
}

std::vector<Assignment> Scheduler::pump() {
  std::vector<Assignment> shipped;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (TaskId task : ready_) {
      const TaskNode& node = graph_.nodes[static_cast<std::size_t>(task)];
      for (const auto& dep : node.deps) {
        if (dep.from != kInitialWorld &&
            states_[static_cast<std::size_t>(dep.from)] != TaskStateKind::Done) {
          throw SchedError("internal: ready task " + std::to_string(task) +
                           " has an unmet dependency");
        }
      }
      if (!rhs_has_call(*node.rhs, symbols_)) {
        // No work to ship; the coordinator evaluates it at dispatch time.
        ready_.erase(task);
        states_[static_cast<std::size_t>(task)] = TaskStateKind::Running;
        push_event(SchedEvent::Kind::Dispatched, task, std::nullopt);
        ExprPtr payload = substitute(node.rhs);
        std::string printed;
        Value v = eval_expr(*payload, {}, program_, symbols_, printed, opts_);
        apply_completion(task, std::move(v), printed, std::nullopt);
        progressed = true;
        break;
      }
      WorkerId idle = -1;
      for (const auto& [wid, busy] : workers_) {
        if (!busy.has_value()) {
          idle = wid;
          break;
        }
      }
      if (idle < 0) continue;  // a later ready task may still fold inline
      ready_.erase(task);
      states_[static_cast<std::size_t>(task)] = TaskStateKind::Running;
      running_on_[static_cast<std::size_t>(task)] = idle;
      workers_[idle] = task;
      Assignment a;
      a.seq = next_seq_;
      a.task = task;
      a.worker = idle;
      a.payload = substitute(node.rhs);
      push_event(SchedEvent::Kind::Dispatched, task, idle);
      shipped.push_back(std::move(a));
      progressed = true;
      break;
    }
  }
  return shipped;
}

bool Scheduler::is_complete() const {
  return done_count_ == static_cast<int>(graph_.nodes.size());
}

std::pair<Value, std::string> Scheduler::final_result() const {
  if (!is_complete()) throw SchedError("final_result requested before completion");
  if (graph_.nodes.empty()) return {v_unit(), output_};
  const auto& last = results_.back();
  return {last.value(), output_};
}

TaskStateKind Scheduler::state_of(TaskId t) const {
  return states_.at(static_cast<std::size_t>(t));
}

std::vector<TaskId> Scheduler::ready_tasks() const { return {ready_.begin(), ready_.end()}; }

int Scheduler::running_count() const {
  int n = 0;
  for (auto s : states_) {
    if (s == TaskStateKind::Running) ++n;
  }
  return n;
}

int Scheduler::worker_count() const { return static_cast<int>(workers_.size()); }

}  // namespace apar
