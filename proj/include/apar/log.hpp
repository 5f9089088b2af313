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

namespace apar {

enum class LogLevel { Off = 0, Info = 1, Trace = 2 };

// Controlled by the APAR_LOG environment variable: off (default), info, trace.
LogLevel log_level();

void log_info(const std::string& msg);
void log_trace(const std::string& msg);

}  // namespace apar
