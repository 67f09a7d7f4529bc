// Copyright 2026 The pauliflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAULIFLOW_LOG_HPP
#define PAULIFLOW_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace pauliflow {

enum class LogLevel : int { off = 0, warn = 1, info = 2, debug = 3 };

/// Level read once from PAULIFLOW_LOG ("off"/"warn"/"info"/"debug" or 0..3).
inline LogLevel log_level() {
    static LogLevel level = [] {
        const char *env = std::getenv("PAULIFLOW_LOG");
        if (env == nullptr) {
            return LogLevel::warn;
        }
        if (std::strcmp(env, "off") == 0 || std::strcmp(env, "0") == 0) return LogLevel::off;
        if (std::strcmp(env, "warn") == 0 || std::strcmp(env, "1") == 0) return LogLevel::warn;
        if (std::strcmp(env, "info") == 0 || std::strcmp(env, "2") == 0) return LogLevel::info;
        if (std::strcmp(env, "debug") == 0 || std::strcmp(env, "3") == 0) return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

}  // namespace pauliflow

#define PF_LOG(level_, tag_, ...)                                     \
    do {                                                              \
        if (static_cast<int>(::pauliflow::log_level()) >=             \
            static_cast<int>(::pauliflow::LogLevel::level_)) {        \
            std::fprintf(stderr, "[pauliflow:" tag_ "] ");            \
            std::fprintf(stderr, __VA_ARGS__);                        \
            std::fprintf(stderr, "\n");                               \
        }                                                             \
    } while (0)

#define PF_WARN(...) PF_LOG(warn, "warn", __VA_ARGS__)
#define PF_INFO(...) PF_LOG(info, "info", __VA_ARGS__)
#define PF_DEBUG(...) PF_LOG(debug, "debug", __VA_ARGS__)

#endif
