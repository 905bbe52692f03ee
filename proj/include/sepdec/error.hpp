// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sepdec {

/// Outcome classes reported by the library. Each maps to one CLI exit code.
enum class ErrorKind {
    Parse,
    Io,
    InvalidArgument,
    ArrayPresent,
    NoModulus,
    ResolutionExhausted,
    GuaranteeViolated,
    NotDecomposable,
    TooLarge,
    GenerationFailed,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sepdec
