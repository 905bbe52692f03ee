// SPDX-License-Identifier: MIT
#include "sepdec/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace sepdec {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("SEPDEC_LOG");
        if (env == nullptr) return LogLevel::off;
        const std::string value(env);
        if (value == "debug") return LogLevel::debug;
        if (value == "info") return LogLevel::info;
        return LogLevel::off;
    }();
    return level;
}

void log(LogLevel level, std::string_view message) {
    if (level == LogLevel::off || level > log_level()) return;
    std::cerr << (level == LogLevel::debug ? "[debug] " : "[info] ") << message << '\n';
}

}  // namespace sepdec
