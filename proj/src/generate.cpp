// SPDX-License-Identifier: MIT
#include "sepdec/generate.hpp"

#include "sepdec/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace sepdec {

namespace {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so draws go through these helpers to stay reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1p-53;
        return lo + (hi - lo) * u;
    }
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do r = engine_();
        while (r >= limit);
        return r % n;
    }
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

constexpr std::int64_t kFineGrid = 1'000'000;

ExactCoord grid_coord(std::int64_t k, std::int64_t denominator) {
    return ExactCoord(mpq_class(static_cast<long>(k), static_cast<unsigned long>(denominator)));
}

/// Seeded test functions on [0,1)^2.
struct TestFunction {
    explicit TestFunction(Rng& rng, FunctionKind kind) : kind(kind) {
        for (auto& a : amp) a = rng.uniform(0.5, 1.5);
        for (auto& b : freq) b = rng.uniform(0.5, 2.0);
        for (auto& c : phase) c = rng.uniform(0.0, 1.0);
    }
    [[nodiscard]] double g0(double x) const {
        return amp[0] * std::sin(2 * std::numbers::pi * (freq[0] * x + phase[0])) + amp[3] * x * x;
    }
    [[nodiscard]] double h0(double y) const {
        return amp[1] * std::cos(2 * std::numbers::pi * (freq[1] * y + phase[1])) - amp[4] * y;
    }
    [[nodiscard]] double operator()(double x, double y) const {
        if (kind == FunctionKind::additive) return g0(x) + h0(y);
        return g0(x) + h0(y) + amp[2] * std::sin(2 * std::numbers::pi * (freq[2] * x * y + phase[2]));
    }

    FunctionKind kind;
    double amp[5]{}, freq[3]{}, phase[3]{};
};

std::vector<std::int64_t> distinct_draws(Rng& rng, std::size_t count, std::set<std::int64_t>& used) {
    if (used.size() + count > static_cast<std::size_t>(kFineGrid) / 2) {
        throw Error(ErrorKind::GenerationFailed, "size exceeds the coordinate pool");
    }
    std::vector<std::int64_t> out;
    while (out.size() < count) {
        const auto k = static_cast<std::int64_t>(rng.below(kFineGrid));
        if (used.insert(k).second) out.push_back(k);
    }
    return out;
}

std::vector<std::pair<ExactCoord, ExactCoord>> monotone_curve(Rng& rng, std::size_t size) {
    std::set<std::int64_t> used_x, used_y;
    auto xs = distinct_draws(rng, size, used_x);
    auto ys = distinct_draws(rng, size, used_y);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<std::pair<ExactCoord, ExactCoord>> pts;
    for (std::size_t k = 0; k < size; ++k) pts.emplace_back(grid_coord(xs[k], kFineGrid), grid_coord(ys[k], kFineGrid));
    return pts;
}

std::vector<std::pair<ExactCoord, ExactCoord>> coordinate_pairs(Rng& rng, std::size_t size) {
    std::set<std::int64_t> used_x, used_y;
    std::vector<std::pair<ExactCoord, ExactCoord>> pts;
    for (std::size_t k = 0; k + 1 < size; k += 2) {
        if (rng.coin()) {
            const auto x = distinct_draws(rng, 1, used_x);
            const auto y = distinct_draws(rng, 2, used_y);
            pts.emplace_back(grid_coord(x[0], kFineGrid), grid_coord(y[0], kFineGrid));
            pts.emplace_back(grid_coord(x[0], kFineGrid), grid_coord(y[1], kFineGrid));
        } else {
            const auto x = distinct_draws(rng, 2, used_x);
            const auto y = distinct_draws(rng, 1, used_y);
            pts.emplace_back(grid_coord(x[0], kFineGrid), grid_coord(y[0], kFineGrid));
            pts.emplace_back(grid_coord(x[1], kFineGrid), grid_coord(y[0], kFineGrid));
        }
    }
    if (size % 2 == 1) {
        const auto x = distinct_draws(rng, 1, used_x);
        const auto y = distinct_draws(rng, 1, used_y);
        pts.emplace_back(grid_coord(x[0], kFineGrid), grid_coord(y[0], kFineGrid));
    }
    return pts;
}

std::vector<std::pair<ExactCoord, ExactCoord>> random_noarray(Rng& rng, std::size_t size) {
    std::int64_t grid = 10;
    while (grid < 2 * static_cast<std::int64_t>(size)) grid *= 10;

    std::map<std::int64_t, std::vector<std::int64_t>> column;  // x -> ys
    std::map<std::int64_t, std::vector<std::int64_t>> row;     // y -> xs
    auto count = [](const auto& groups, std::int64_t key) {
        auto it = groups.find(key);
        return it == groups.end() ? std::size_t{0} : it->second.size();
    };

    std::vector<std::pair<ExactCoord, ExactCoord>> pts;
    const std::size_t budget = 100 * size + 1000;
    for (std::size_t attempt = 0; pts.size() < size; ++attempt) {
        if (attempt >= budget) throw Error(ErrorKind::GenerationFailed, "rejection budget exhausted");
        const auto cx = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(grid)));
        const auto cy = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(grid)));
        const std::size_t in_col = count(column, cx);
        const std::size_t in_row = count(row, cy);
        if (in_col > 0 && in_row > 0) continue;  // duplicate or new corner
        bool creates = false;
        if (in_col > 0) {
            for (auto y : column[cx]) creates = creates || count(row, y) > 1;
        }
        if (in_row > 0) {
            for (auto x : row[cy]) creates = creates || count(column, x) > 1;
        }
        if (creates) continue;
        column[cx].push_back(cy);
        row[cy].push_back(cx);
        pts.emplace_back(grid_coord(cx, grid), grid_coord(cy, grid));
    }
    return pts;
}

}  // namespace

std::optional<Family> parse_family(std::string_view name) {
    if (name == "monotone_curve") return Family::monotone_curve;
    if (name == "coordinate_pairs") return Family::coordinate_pairs;
    if (name == "random_noarray") return Family::random_noarray;
    return std::nullopt;
}

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::monotone_curve: return "monotone_curve";
        case Family::coordinate_pairs: return "coordinate_pairs";
        case Family::random_noarray: return "random_noarray";
    }
    return "unknown";
}

std::optional<FunctionKind> parse_function_kind(std::string_view name) {
    if (name == "smooth") return FunctionKind::smooth;
    if (name == "additive") return FunctionKind::additive;
    return std::nullopt;
}

PlaneSample generate(Family family, std::size_t size, std::uint64_t seed, FunctionKind kind) {
    if (size < 1) throw Error(ErrorKind::InvalidArgument, "size must be >= 1");
    Rng rng(seed);
    const TestFunction fn(rng, kind);
    std::vector<std::pair<ExactCoord, ExactCoord>> coords;
    switch (family) {
        case Family::monotone_curve: coords = monotone_curve(rng, size); break;
        case Family::coordinate_pairs: coords = coordinate_pairs(rng, size); break;
        case Family::random_noarray: coords = random_noarray(rng, size); break;
    }
    std::vector<SamplePoint> points;
    points.reserve(coords.size());
    for (auto& [x, y] : coords) {
        const double f = fn(x.to_double(), y.to_double());
        points.push_back({std::move(x), std::move(y), f});
    }
    PlaneSample sample(std::move(points));
    if (detect_three_array(sample)) throw Error(ErrorKind::GenerationFailed, "generated sample contains an array");
    return sample;
}

}  // namespace sepdec
