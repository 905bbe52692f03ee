// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace sepdec {

enum class Family { monotone_curve, coordinate_pairs, random_noarray };
enum class FunctionKind { smooth, additive };

std::optional<Family> parse_family(std::string_view name);
std::string_view to_string(Family family) noexcept;
std::optional<FunctionKind> parse_function_kind(std::string_view name);

/// Deterministic sample with no 3-point array, coordinates in [0, 1).
///
/// monotone_curve: strictly increasing x and y, no shared coordinate.
/// coordinate_pairs: disjoint pairs sharing x or y, never chained.
/// random_noarray: grid points accepted only when they keep the sample array-free.
///
/// f is a seeded smooth non-additive function, or g0(x) + h0(y) for `additive`.
PlaneSample generate(Family family, std::size_t size, std::uint64_t seed,
                     FunctionKind kind = FunctionKind::smooth);

}  // namespace sepdec
