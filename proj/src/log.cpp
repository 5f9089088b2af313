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

#include "apar/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace apar {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("APAR_LOG");
    if (env == nullptr) return LogLevel::Off;
    if (std::strcmp(env, "trace") == 0) return LogLevel::Trace;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Off;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::fprintf(stderr, "[apar] %s\n", msg.c_str());
}

void log_trace(const std::string& msg) {
  if (log_level() >= LogLevel::Trace) std::fprintf(stderr, "[apar] %s\n", msg.c_str());
}

}  // namespace apar
