// SPDX-License-Identifier: MIT
#include "sepdec/error.hpp"

namespace sepdec {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Io: return "Io";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ArrayPresent: return "ArrayPresent";
        case ErrorKind::NoModulus: return "NoModulus";
        case ErrorKind::ResolutionExhausted: return "ResolutionExhausted";
        case ErrorKind::GuaranteeViolated: return "GuaranteeViolated";
        case ErrorKind::NotDecomposable: return "NotDecomposable";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
    }
    return "Unknown";
}

}  // namespace sepdec
