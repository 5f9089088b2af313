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
#include <utility>
#include <variant>
#include <vector>

#include "apar/ast.hpp"
#include "apar/depgraph.hpp"
#include "apar/sched.hpp"
#include "apar/value.hpp"

namespace apar::wire {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::uint32_t kMaxFrameBytes = 0x7FFFFFFF;  // 2^31 - 1

// Frame layout: 4-byte big-endian payload length, then a UTF-8 JSON object
// with a "type" field. Keys are emitted in a fixed order so encoding is
// byte-deterministic:
//   hello:        type, protocol_version
//   hello_ack:    type, worker_id
//   load_program: type, program_source
//   assign:       type, task_id, expr, program_digest
//   result:       type, task_id, value, printed
//   shutdown:     type
//   proto_error:  type, message
// Values: integers as JSON numbers, unit as null, tuples as arrays,
// matrices as {rows, cols, cells}, summaries as {count, digest}.

struct Hello {
  int protocol_version = kProtocolVersion;
};
struct HelloAck {
  WorkerId worker_id = 0;
};
struct LoadProgram {
  std::string program_source;
};
struct Assign {
  TaskId task_id = -1;
  ExprPtr expr;  // RHS with substituted values
  std::uint64_t program_digest = 0;
};
struct TaskResult {
  TaskId task_id = -1;
  Value value;
  std::string printed;
};
struct Shutdown {};
struct ProtoError {
  std::string message;
};

using Message =
    std::variant<Hello, HelloAck, LoadProgram, Assign, TaskResult, Shutdown, ProtoError>;

bool message_equal(const Message& a, const Message& b);

// 64-bit FNV-1a over the canonical source bytes; session-consistency guard.
std::uint64_t fnv1a64(std::string_view bytes);

// Throws WireError when the payload exceeds kMaxFrameBytes.
std::string encode_frame(const Message& msg);

// Consumes as many complete frames as present; returns the messages and the
// unconsumed tail. Throws WireError on malformed input; the stream position
// is then undefined and the connection must be closed.
std::pair<std::vector<Message>, std::string> decode_frames(std::string_view buffer);

// Incremental decoder for socket reads; tolerant of frames split across
// arbitrary read boundaries.
class Decoder {
 public:
  std::vector<Message> feed(std::string_view bytes);
  const std::string& remaining() const { return buffer_; }

 private:
  std::string buffer_;
};

}  // namespace apar::wire
