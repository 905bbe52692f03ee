// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/exact.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sepdec {

struct SamplePoint {
    ExactCoord x;
    ExactCoord y;
    double f = 0.0;
};

struct BoundingBox {
    ExactCoord x_min, x_max, y_min, y_max;
};

/// Finite sample of a plane compactum with attached function values.
/// Nonempty, and points are pairwise distinct as plane points.
class PlaneSample {
public:
    explicit PlaneSample(std::vector<SamplePoint> points);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const SamplePoint& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] const std::vector<SamplePoint>& points() const noexcept { return points_; }
    [[nodiscard]] const BoundingBox& bounds() const noexcept { return bounds_; }
    [[nodiscard]] std::vector<double> values() const;

    /// Same point set carrying new function values.
    [[nodiscard]] PlaneSample with_values(const std::vector<double>& values) const;

private:
    std::vector<SamplePoint> points_;
    BoundingBox bounds_;
};

/// Indices of a 3-point array a1 - a2 - a3; a2 is the corner.
struct ArrayWitness {
    std::size_t a1 = 0, a2 = 0, a3 = 0;
    friend bool operator==(const ArrayWitness&, const ArrayWitness&) = default;
};

/// Smallest witness in (a2, a1, a3) order, or nullopt when the sample has no
/// point sharing its x with one point and its y with another.
std::optional<ArrayWitness> detect_three_array(const PlaneSample& sample);

double sup_norm(const PlaneSample& sample);
double sup_norm(const std::vector<double>& values);

/// max(|x1 - x2|, |y1 - y2|)
ExactCoord linf_distance(const SamplePoint& a, const SamplePoint& b);

inline constexpr int kMaxDeltaExponent = 60;

/// Largest δ = 2^-k, 0 <= k <= 60, such that every pair of sample points at
/// max-metric distance < 2δ has |Δf| < eps. Throws NoModulus otherwise.
double modulus_delta(const PlaneSample& sample, double eps);

/// `x,y,f` records; `#` lines and blank lines are skipped.
PlaneSample read_sample_csv(std::istream& in);
PlaneSample read_sample_csv(const std::string& path);
void write_sample_csv(std::ostream& out, const PlaneSample& sample);

/// Round-trip-safe text for a double ("%.17g").
std::string format_double(double v);

}  // namespace sepdec
