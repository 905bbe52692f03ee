// SPDX-License-Identifier: MIT
#pragma once

#include <string_view>

namespace sepdec {

enum class LogLevel { off, info, debug };

/// Level from SEPDEC_LOG (debug|info), read once.
LogLevel log_level();
void log(LogLevel level, std::string_view message);

}  // namespace sepdec
