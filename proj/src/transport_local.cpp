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

#include "apar/transport_local.hpp"

#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "apar/log.hpp"

namespace apar {

namespace {

struct Job {
  int seq = 0;
  TaskId task = -1;
  ExprPtr payload;
};

struct Inbox {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::optional<Job>> queue;  // nullopt = shut down

  void push(std::optional<Job> job) {
    {
      std::lock_guard<std::mutex> lock(mu);
      queue.push_back(std::move(job));
    }
    cv.notify_one();
  }
  std::optional<Job> pop() {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return !queue.empty(); });
    auto job = std::move(queue.front());
    queue.pop_front();
    return job;
  }
};

struct Completion {
  TaskId task = -1;
  WorkerId worker = -1;
  Value value;
  std::string printed;
  std::string error;  // nonempty on evaluation failure
};

struct Mailbox {
  std::mutex mu;
  std::condition_variable cv;
  std::map<int, Completion> by_seq;

  void post(int seq, Completion c) {
    {
      std::lock_guard<std::mutex> lock(mu);
      by_seq.emplace(seq, std::move(c));
    }
    cv.notify_all();
  }
  Completion take(int seq) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return by_seq.count(seq) != 0; });
    Completion c = std::move(by_seq.at(seq));
    by_seq.erase(seq);
    return c;
  }
};

}  // namespace

RunOutcome run_local(const Program& program, const SymbolTable& symbols, const DepGraph& graph,
                     int num_workers, const EvalOptions& opts) {
  if (num_workers < 1) {
    throw TransportError("local transport requires at least one worker, got " +
                         std::to_string(num_workers));
  }
  log_info("local run: " + std::to_string(graph.nodes.size()) + " tasks on " +
           std::to_string(num_workers) + " workers");

  Scheduler sched(program, symbols, graph, opts);
  Mailbox mailbox;
  std::vector<std::unique_ptr<Inbox>> inboxes;
  std::vector<std::thread> threads;
  inboxes.reserve(static_cast<std::size_t>(num_workers));
  threads.reserve(static_cast<std::size_t>(num_workers));

  for (WorkerId w = 0; w < num_workers; ++w) {
    inboxes.push_back(std::make_unique<Inbox>());
    Inbox* inbox = inboxes.back().get();
    threads.emplace_back([&, inbox, w] {
      while (auto job = inbox->pop()) {
        Completion c;
        c.task = job->task;
        c.worker = w;
        try {
          c.value = eval_expr(*job->payload, {}, program, symbols, c.printed, opts);
        } catch (const std::exception& e) {
          c.error = e.what();
        }
        mailbox.post(job->seq, std::move(c));
      }
    });
  }

  auto shutdown = [&] {
    for (auto& inbox : inboxes) inbox->push(std::nullopt);
    for (auto& t : threads) t.join();
  };

  try {
    std::deque<int> outstanding;  // dispatch seqs, in dispatch order
    auto send = [&](std::vector<Assignment> assignments) {
      for (auto& a : assignments) {
        outstanding.push_back(a.seq);
        inboxes[static_cast<std::size_t>(a.worker)]->push(Job{a.seq, a.task, a.payload});
      }
    };
    for (WorkerId w = 0; w < num_workers; ++w) send(sched.on_worker_join(w));

    while (!sched.is_complete()) {
      if (outstanding.empty()) {
        throw TransportError("internal: run stalled with no tasks in flight");
      }
      // Ingest completions in dispatch order: deterministic traces, and
      // every in-flight task still computes in parallel.
      int seq = outstanding.front();
      outstanding.pop_front();
      Completion c = mailbox.take(seq);
      if (!c.error.empty()) {
        throw TransportError("task " + std::to_string(c.task) + " failed: " + c.error);
      }
      send(sched.on_result(c.worker, c.task, std::move(c.value), c.printed));
    }
    shutdown();
  } catch (...) {
    shutdown();
    throw;
  }

  auto [value, output] = sched.final_result();
  return RunOutcome{std::move(value), std::move(output), sched.trace()};
}

}  // namespace apar
