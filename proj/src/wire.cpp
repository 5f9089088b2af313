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

#include "apar/wire.hpp"

#include <json.hpp>

#include "apar/error.hpp"

namespace apar::wire {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

namespace {

std::int64_t json_int(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned()) {
    auto u = j.get<std::uint64_t>();
    if (u <= 0x7FFFFFFFFFFFFFFFULL) return static_cast<std::int64_t>(u);
  }
  throw WireError(std::string("expected a 64-bit integer for ") + what);
}

std::string json_string(const Json& j, const char* what) {
  if (!j.is_string()) throw WireError(std::string("expected a string for ") + what);
  return j.get<std::string>();
}

const Json& json_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw WireError(std::string("missing field '") + key + "'");
  return *it;
}

Json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VInt>) {
          return Json(x.value);
        } else if constexpr (std::is_same_v<T, VUnit>) {
          return Json(nullptr);
        } else if constexpr (std::is_same_v<T, VTuple>) {
          Json arr = Json::array();
          for (const auto& el : x.elements) arr.push_back(value_to_json(el));
          return arr;
        } else if constexpr (std::is_same_v<T, VMatrix>) {
          Json m;
          m["rows"] = x.rows;
          m["cols"] = x.cols;
          m["cells"] = x.cells;
          return m;
        } else {
          Json s;
          s["count"] = x.count;
          s["digest"] = x.digest;
          return s;
        }
      },
      v.v);
}

Value value_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return v_int(json_int(j, "value"));
  if (j.is_null()) return v_unit();
  if (j.is_array()) {
    VTuple t;
    t.elements.reserve(j.size());
    for (const auto& el : j) t.elements.push_back(value_from_json(el));
    return Value{std::move(t)};
  }
  if (j.is_object()) {
    if (j.contains("rows")) {
      VMatrix m;
      m.rows = json_int(json_field(j, "rows"), "rows");
      m.cols = json_int(json_field(j, "cols"), "cols");
      const Json& cells = json_field(j, "cells");
      if (!cells.is_array()) throw WireError("matrix cells must be an array");
      m.cells.reserve(cells.size());
      for (const auto& c : cells) m.cells.push_back(json_int(c, "cell"));
      if (m.rows < 1 || m.cols < 1 ||
          static_cast<std::int64_t>(m.cells.size()) != m.rows * m.cols) {
        throw WireError("matrix cell count does not match its dimensions");
      }
      return Value{std::move(m)};
    }
    if (j.contains("count")) {
      return Value{VSummary{json_int(json_field(j, "count"), "count"),
                            json_int(json_field(j, "digest"), "digest")}};
    }
  }
  throw WireError("unrecognized value encoding");
}

Json expr_to_json(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        Json j;
        if constexpr (std::is_same_v<T, Lit>) {
          j["e"] = "lit";
          j["i"] = x.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          j["e"] = "var";
          j["name"] = x.name;
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          j["e"] = "tuple";
          Json items = Json::array();
          for (const auto& el : x.elements) items.push_back(expr_to_json(*el));
          j["items"] = std::move(items);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          j["e"] = "call";
          j["callee"] = x.callee;
          Json args = Json::array();
          for (const auto& a : x.args) args.push_back(expr_to_json(*a));
          j["args"] = std::move(args);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          j["e"] = "if";
          j["cond"] = expr_to_json(*x.cond);
          j["then"] = expr_to_json(*x.then_branch);
          j["else"] = expr_to_json(*x.else_branch);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          j["e"] = "binop";
          j["op"] = binop_name(x.op);
          j["lhs"] = expr_to_json(*x.lhs);
          j["rhs"] = expr_to_json(*x.rhs);
        } else {  // ValueLit
          j["e"] = "value";
          j["value"] = value_to_json(x.value);
        }
        return j;
      },
      e.node);
}

ExprPtr expr_from_json(const Json& j) {
  if (!j.is_object()) throw WireError("expression must be an object");
  std::string kind = json_string(json_field(j, "e"), "e");
  if (kind == "lit") return mk_expr(Lit{json_int(json_field(j, "i"), "i")});
  if (kind == "var") return mk_expr(Var{json_string(json_field(j, "name"), "name")});
  if (kind == "tuple") {
    const Json& items = json_field(j, "items");
    if (!items.is_array()) throw WireError("tuple items must be an array");
    TupleExpr t;
    for (const auto& el : items) t.elements.push_back(expr_from_json(el));
    return mk_expr(std::move(t));
  }
  if (kind == "call") {
    CallExpr c{json_string(json_field(j, "callee"), "callee"), {}};
    const Json& args = json_field(j, "args");
    if (!args.is_array()) throw WireError("call args must be an array");
    for (const auto& a : args) c.args.push_back(expr_from_json(a));
    return mk_expr(std::move(c));
  }
  if (kind == "if") {
    return mk_expr(IfExpr{expr_from_json(json_field(j, "cond")),
                          expr_from_json(json_field(j, "then")),
                          expr_from_json(json_field(j, "else"))});
  }
  if (kind == "binop") {
    std::string op = json_string(json_field(j, "op"), "op");
    BinOpKind k;
    if (op == "+") {
      k = BinOpKind::Add;
    } else if (op == "-") {
      k = BinOpKind::Sub;
    } else if (op == "*") {
      k = BinOpKind::Mul;
    } else {
      throw WireError("unknown operator '" + op + "'");
    }
    return mk_expr(BinOp{k, expr_from_json(json_field(j, "lhs")),
                         expr_from_json(json_field(j, "rhs"))});
  }
  if (kind == "value") return mk_expr(ValueLit{value_from_json(json_field(j, "value"))});
  throw WireError("unknown expression kind '" + kind + "'");
}

Json message_to_json(const Message& msg) {
  return std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        Json j;
        if constexpr (std::is_same_v<T, Hello>) {
          j["type"] = "hello";
          j["protocol_version"] = m.protocol_version;
        } else if constexpr (std::is_same_v<T, HelloAck>) {
          j["type"] = "hello_ack";
          j["worker_id"] = m.worker_id;
        } else if constexpr (std::is_same_v<T, LoadProgram>) {
          j["type"] = "load_program";
          j["program_source"] = m.program_source;
        } else if constexpr (std::is_same_v<T, Assign>) {
          j["type"] = "assign";
          j["task_id"] = m.task_id;
          j["expr"] = expr_to_json(*m.expr);
          j["program_digest"] = m.program_digest;
        } else if constexpr (std::is_same_v<T, TaskResult>) {
          j["type"] = "result";
          j["task_id"] = m.task_id;
          j["value"] = value_to_json(m.value);
          j["printed"] = m.printed;
        } else if constexpr (std::is_same_v<T, Shutdown>) {
          j["type"] = "shutdown";
        } else {  // ProtoError
          j["type"] = "proto_error";
          j["message"] = m.message;
        }
        return j;
      },
      msg);
}

Message message_from_json(const Json& j) {
  if (!j.is_object()) throw WireError("frame payload must be a JSON object");
  std::string type = json_string(json_field(j, "type"), "type");
  if (type == "hello") {
    return Hello{static_cast<int>(json_int(json_field(j, "protocol_version"), "version"))};
  }
  if (type == "hello_ack") {
    return HelloAck{static_cast<WorkerId>(json_int(json_field(j, "worker_id"), "worker_id"))};
  }
  if (type == "load_program") {
    return LoadProgram{json_string(json_field(j, "program_source"), "program_source")};
  }
  if (type == "assign") {
    Assign a;
    a.task_id = static_cast<TaskId>(json_int(json_field(j, "task_id"), "task_id"));
    a.expr = expr_from_json(json_field(j, "expr"));
    const Json& digest = json_field(j, "program_digest");
    if (digest.is_number_unsigned()) {
      a.program_digest = digest.get<std::uint64_t>();
    } else if (digest.is_number_integer()) {
      a.program_digest = static_cast<std::uint64_t>(digest.get<std::int64_t>());
    } else {
      throw WireError("program_digest must be an integer");
    }
    return a;
  }
  if (type == "result") {
    TaskResult r;
    r.task_id = static_cast<TaskId>(json_int(json_field(j, "task_id"), "task_id"));
    r.value = value_from_json(json_field(j, "value"));
    r.printed = json_string(json_field(j, "printed"), "printed");
    return r;
  }
  if (type == "shutdown") return Shutdown{};
  if (type == "proto_error") {
    return ProtoError{json_string(json_field(j, "message"), "message")};
  }
  throw WireError("unknown message type '" + type + "'");
}

}  // namespace

bool message_equal(const Message& a, const Message& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Hello>) {
          return x.protocol_version == y.protocol_version;
        } else if constexpr (std::is_same_v<T, HelloAck>) {
          return x.worker_id == y.worker_id;
        } else if constexpr (std::is_same_v<T, LoadProgram>) {
          return x.program_source == y.program_source;
        } else if constexpr (std::is_same_v<T, Assign>) {
          return x.task_id == y.task_id && x.program_digest == y.program_digest &&
                 expr_equal(*x.expr, *y.expr);
        } else if constexpr (std::is_same_v<T, TaskResult>) {
          return x.task_id == y.task_id && value_equal(x.value, y.value) &&
                 x.printed == y.printed;
        } else if constexpr (std::is_same_v<T, Shutdown>) {
          return true;
        } else {
          return x.message == y.message;
        }
      },
      a);
}

std::string encode_frame(const Message& msg) {
  std::string payload = message_to_json(msg).dump();
  if (payload.size() > kMaxFrameBytes) {
    throw WireError("frame too large: payload of " + std::to_string(payload.size()) +
                    " bytes exceeds limit");
  }
  std::uint32_t len = static_cast<std::uint32_t>(payload.size());
  std::string frame;
  frame.reserve(4 + payload.size());
  frame.push_back(static_cast<char>((len >> 24) & 0xFF));
  frame.push_back(static_cast<char>((len >> 16) & 0xFF));
  frame.push_back(static_cast<char>((len >> 8) & 0xFF));
  frame.push_back(static_cast<char>(len & 0xFF));
  frame += payload;
  return frame;
}

std::vector<Message> Decoder::feed(std::string_view bytes) {
  buffer_.append(bytes.data(), bytes.size());
  std::vector<Message> out;
  std::size_t offset = 0;
  while (buffer_.size() - offset >= 4) {
    const auto* p = reinterpret_cast<const unsigned char*>(buffer_.data() + offset);
    std::uint32_t len = (static_cast<std::uint32_t>(p[0]) << 24) |
                        (static_cast<std::uint32_t>(p[1]) << 16) |
                        (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
    if (len > kMaxFrameBytes) {
      throw WireError("frame too large: length prefix claims " + std::to_string(len) +
                      " bytes");
    }
    if (buffer_.size() - offset - 4 < len) break;
    Json j = Json::parse(buffer_.data() + offset + 4, buffer_.data() + offset + 4 + len,
                         nullptr, false);
    if (j.is_discarded()) throw WireError("malformed frame payload (invalid JSON)");
    out.push_back(message_from_json(j));
    offset += 4 + len;
  }
  buffer_.erase(0, offset);
  return out;
}

std::pair<std::vector<Message>, std::string> decode_frames(std::string_view buffer) {
  Decoder d;
  std::vector<Message> msgs = d.feed(buffer);
  return {std::move(msgs), d.remaining()};
}

}  // namespace apar::wire
