// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/exact.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sepdec {

struct Breakpoint {
    ExactCoord at;
    double value = 0.0;
};

/// Continuous piecewise-linear function on the real line with constant tails.
///
/// Breakpoint coordinates are exact and strictly increasing. Between two
/// consecutive breakpoints the value is interpolated linearly; the result is
/// clamped to the segment's value range so rounding never leaves it.
class PiecewiseLinear {
public:
    explicit PiecewiseLinear(std::vector<Breakpoint> breakpoints);

    static PiecewiseLinear constant(double value, const ExactCoord& at = ExactCoord{});

    [[nodiscard]] double operator()(const ExactCoord& x) const;
    [[nodiscard]] const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }
    /// Max |value| over breakpoints, which is the sup-norm on the whole line.
    [[nodiscard]] double sup_norm() const;

    /// Pointwise sum on the merged breakpoint set.
    friend PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b);

private:
    std::vector<Breakpoint> breakpoints_;
};

inline constexpr const char* kPiecewiseLinearHeader = "# pl v1 tails=constant";

void write_piecewise_linear(std::ostream& out, const PiecewiseLinear& fn);
PiecewiseLinear read_piecewise_linear(std::istream& in);
PiecewiseLinear read_piecewise_linear(const std::string& path);

}  // namespace sepdec
