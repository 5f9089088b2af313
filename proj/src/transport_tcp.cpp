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

#include "apar/transport_tcp.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <cstring>
#include <deque>
#include <map>
#include <mutex>
#include <thread>
#include <variant>
#include <vector>

#include "apar/log.hpp"
#include "apar/parser.hpp"
#include "apar/wire.hpp"

namespace apar {

namespace {

void close_fd(int fd) {
  if (fd >= 0) ::close(fd);
}

sockaddr_in make_addr(const std::string& host, int port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw TransportError("invalid IPv4 address '" + host + "'");
  }
  return addr;
}

void write_all(int fd, const std::string& bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) throw TransportError("connection write failed");
    sent += static_cast<std::size_t>(n);
  }
}

void send_message(int fd, const wire::Message& msg) { write_all(fd, wire::encode_frame(msg)); }

// Blocking read of the next message on a worker connection.
wire::Message read_message(int fd, wire::Decoder& decoder,
                           std::deque<wire::Message>& pending) {
  while (pending.empty()) {
    char buf[65536];
    ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n <= 0) throw TransportError("connection closed");
    for (auto& m : decoder.feed(std::string_view(buf, static_cast<std::size_t>(n)))) {
      pending.push_back(std::move(m));
    }
  }
  wire::Message msg = std::move(pending.front());
  pending.pop_front();
  return msg;
}

}  // namespace

CoordinatorServer::CoordinatorServer(const ServeOptions& opts) : opts_(opts) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw TransportError("cannot create socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = make_addr(opts.host, opts.port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    std::string err = std::strerror(errno);
    close_fd(listen_fd_);
    listen_fd_ = -1;
    throw TransportError("cannot bind " + opts.host + ":" + std::to_string(opts.port) + ": " +
                         err);
  }
  if (::listen(listen_fd_, 64) != 0) {
    close_fd(listen_fd_);
    listen_fd_ = -1;
    throw TransportError("listen failed");
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

CoordinatorServer::~CoordinatorServer() { close_fd(listen_fd_); }

namespace {

struct ConnEvent {
  enum class Kind { Accepted, Got, Closed };
  Kind kind;
  int fd = -1;
  wire::Message msg;
  std::string error;
};

struct EventQueue {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<ConnEvent> events;

  void push(ConnEvent ev) {
    {
      std::lock_guard<std::mutex> lock(mu);
      events.push_back(std::move(ev));
    }
    cv.notify_one();
  }
  // Waits until an event is present or the deadline passes.
  std::optional<ConnEvent> pop_until(std::chrono::steady_clock::time_point deadline) {
    std::unique_lock<std::mutex> lock(mu);
    if (!cv.wait_until(lock, deadline, [&] { return !events.empty(); })) return std::nullopt;
    ConnEvent ev = std::move(events.front());
    events.pop_front();
    return ev;
  }
};

struct Conn {
  int fd = -1;
  std::thread reader;
  bool hello_seen = false;
  bool registered = false;
  WorkerId worker = -1;
};

}  // namespace

RunOutcome CoordinatorServer::run(const Program& program, const SymbolTable& symbols,
                                  const DepGraph& graph, const EvalOptions& eopts) {
  Scheduler sched(program, symbols, graph, eopts);
  const std::uint64_t digest = wire::fnv1a64(program.source);

  EventQueue queue;
  std::map<int, Conn> conns;
  std::map<WorkerId, int> fd_of_worker;
  std::vector<int> pending_joins;  // fds with Hello seen, awaiting the barrier
  WorkerId next_worker = 0;
  int registered = 0;
  bool accepting = true;

  std::thread acceptor([&] {
    while (true) {
      int fd = ::accept(listen_fd_, nullptr, nullptr);
      if (fd < 0) return;  // listener closed
      queue.push(ConnEvent{ConnEvent::Kind::Accepted, fd, {}, {}});
    }
  });

  auto start_reader = [&](Conn& conn) {
    int fd = conn.fd;
    conn.reader = std::thread([fd, &queue] {
      wire::Decoder decoder;
      char buf[65536];
      while (true) {
        ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
        if (n <= 0) {
          queue.push(ConnEvent{ConnEvent::Kind::Closed, fd, {}, {}});
          return;
        }
        try {
          for (auto& m : decoder.feed(std::string_view(buf, static_cast<std::size_t>(n)))) {
            queue.push(ConnEvent{ConnEvent::Kind::Got, fd, std::move(m), {}});
          }
        } catch (const WireError& e) {
          queue.push(ConnEvent{ConnEvent::Kind::Closed, fd, {}, e.what()});
          return;
        }
      }
    });
  };

  auto send_assignments = [&](const std::vector<Assignment>& assignments) {
    for (const auto& a : assignments) {
      send_message(fd_of_worker.at(a.worker), wire::Assign{a.task, a.payload, digest});
      log_trace("sent task " + std::to_string(a.task) + " to worker " +
                std::to_string(a.worker));
    }
  };

  auto register_conn = [&](int fd) {
    Conn& conn = conns.at(fd);
    conn.registered = true;
    conn.worker = next_worker++;
    fd_of_worker[conn.worker] = fd;
    ++registered;
    send_message(fd, wire::HelloAck{conn.worker});
    send_message(fd, wire::LoadProgram{program.source});
    log_info("worker " + std::to_string(conn.worker) + " joined");
    send_assignments(sched.on_worker_join(conn.worker));
  };

  auto cleanup = [&] {
    // Stop accepting, close every connection, and join the reader threads.
    if (accepting) {
      ::shutdown(listen_fd_, SHUT_RDWR);
      accepting = false;
    }
    close_fd(listen_fd_);
    listen_fd_ = -1;
    for (auto& [fd, conn] : conns) ::shutdown(fd, SHUT_RDWR);
    acceptor.join();
    for (auto& [fd, conn] : conns) {
      if (conn.reader.joinable()) conn.reader.join();
      close_fd(fd);
    }
    conns.clear();
  };

  const auto barrier_deadline = std::chrono::steady_clock::now() + opts_.handshake_timeout;

  try {
    while (!sched.is_complete()) {
      auto deadline = registered < opts_.min_workers
                          ? barrier_deadline
                          : std::chrono::steady_clock::now() + std::chrono::hours(24);
      auto ev = queue.pop_until(deadline);
      if (!ev.has_value()) {
        if (registered < opts_.min_workers) {
          throw TransportError("timed out waiting for workers (have " +
                               std::to_string(registered) + ", need " +
                               std::to_string(opts_.min_workers) + ")");
        }
        throw TransportError("run stalled: no worker events for 24 hours");
      }
      switch (ev->kind) {
        case ConnEvent::Kind::Accepted: {
          Conn conn;
          conn.fd = ev->fd;
          auto [it, inserted] = conns.emplace(ev->fd, std::move(conn));
          start_reader(it->second);
          break;
        }
        case ConnEvent::Kind::Got: {
          auto cit = conns.find(ev->fd);
          if (cit == conns.end()) break;  // already discarded
          Conn& conn = cit->second;
          if (const auto* hello = std::get_if<wire::Hello>(&ev->msg)) {
            if (conn.hello_seen) throw TransportError("duplicate hello from a worker");
            if (hello->protocol_version != wire::kProtocolVersion) {
              send_message(ev->fd, wire::ProtoError{
                                       "protocol version mismatch: coordinator speaks " +
                                       std::to_string(wire::kProtocolVersion) + ", worker sent " +
                                       std::to_string(hello->protocol_version)});
              ::shutdown(ev->fd, SHUT_RDWR);
              break;
            }
            conn.hello_seen = true;
            if (registered < opts_.min_workers) {
              pending_joins.push_back(ev->fd);
              // Admit everyone queued once the barrier is met.
              if (static_cast<int>(pending_joins.size()) >= opts_.min_workers) {
                for (int fd : pending_joins) register_conn(fd);
                pending_joins.clear();
              }
            } else {
              register_conn(ev->fd);
            }
          } else if (const auto* result = std::get_if<wire::TaskResult>(&ev->msg)) {
            if (!conn.registered) throw TransportError("result from an unregistered worker");
            send_assignments(
                sched.on_result(conn.worker, result->task_id, result->value, result->printed));
          } else if (const auto* perr = std::get_if<wire::ProtoError>(&ev->msg)) {
            throw TransportError("worker reported: " + perr->message);
          } else {
            throw TransportError("unexpected message from worker");
          }
          break;
        }
        case ConnEvent::Kind::Closed: {
          auto cit = conns.find(ev->fd);
          if (cit == conns.end()) break;
          if (!ev->error.empty()) {
            throw TransportError("worker connection error: " + ev->error);
          }
          if (cit->second.registered && !sched.is_complete()) {
            throw TransportError("worker " + std::to_string(cit->second.worker) +
                                 " disconnected mid-run (no fault tolerance)");
          }
          // Unregistered straggler or post-completion close: drop it.
          ::shutdown(ev->fd, SHUT_RDWR);
          if (cit->second.reader.joinable()) cit->second.reader.detach();
          close_fd(ev->fd);
          conns.erase(cit);
          break;
        }
      }
    }
    for (auto& [fd, conn] : conns) {
      if (conn.registered) send_message(fd, wire::Shutdown{});
    }
    cleanup();
  } catch (...) {
    cleanup();
    throw;
  }

  auto [value, output] = sched.final_result();
  return RunOutcome{std::move(value), std::move(output), sched.trace()};
}

int run_worker(const std::string& host, int port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw TransportError("cannot create socket");
  sockaddr_in addr = make_addr(host, port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    std::string err = std::strerror(errno);
    close_fd(fd);
    throw TransportError("cannot connect to " + host + ":" + std::to_string(port) + ": " + err);
  }

  wire::Decoder decoder;
  std::deque<wire::Message> pending;
  Program program;
  SymbolTable symbols;
  std::uint64_t digest = 0;

  try {
    send_message(fd, wire::Hello{wire::kProtocolVersion});

    wire::Message ack = read_message(fd, decoder, pending);
    if (const auto* perr = std::get_if<wire::ProtoError>(&ack)) {
      log_info("coordinator refused handshake: " + perr->message);
      close_fd(fd);
      return 1;
    }
    const auto* hello_ack = std::get_if<wire::HelloAck>(&ack);
    if (hello_ack == nullptr) throw TransportError("expected hello_ack");
    log_info("joined as worker " + std::to_string(hello_ack->worker_id));

    wire::Message load = read_message(fd, decoder, pending);
    const auto* load_program = std::get_if<wire::LoadProgram>(&load);
    if (load_program == nullptr) throw TransportError("expected load_program");
    try {
      program = parse_program(load_program->program_source);
      symbols = resolve(program);
    } catch (const Error& e) {
      send_message(fd, wire::ProtoError{std::string("program rejected: ") + e.what()});
      close_fd(fd);
      return 1;
    }
    digest = wire::fnv1a64(program.source);

    while (true) {
      wire::Message msg = read_message(fd, decoder, pending);
      if (std::holds_alternative<wire::Shutdown>(msg)) {
        close_fd(fd);
        return 0;
      }
      if (const auto* perr = std::get_if<wire::ProtoError>(&msg)) {
        log_info("coordinator error: " + perr->message);
        close_fd(fd);
        return 1;
      }
      const auto* assign = std::get_if<wire::Assign>(&msg);
      if (assign == nullptr) {
        send_message(fd, wire::ProtoError{"unexpected message; expected assign or shutdown"});
        close_fd(fd);
        return 1;
      }
      if (assign->program_digest != digest) {
        send_message(fd, wire::ProtoError{"program digest mismatch on task " +
                                          std::to_string(assign->task_id)});
        close_fd(fd);
        return 1;
      }
      wire::TaskResult result;
      result.task_id = assign->task_id;
      try {
        result.value = eval_expr(*assign->expr, {}, program, symbols, result.printed);
      } catch (const Error& e) {
        send_message(fd, wire::ProtoError{"task " + std::to_string(assign->task_id) + ": " +
                                          e.what()});
        close_fd(fd);
        return 1;
      }
      log_trace("worker evaluated task " + std::to_string(assign->task_id));
      send_message(fd, result);
    }
  } catch (const TransportError&) {
    close_fd(fd);
    throw;
  } catch (const WireError& e) {
    close_fd(fd);
    throw TransportError(std::string("protocol failure: ") + e.what());
  }
}

}  // namespace apar
