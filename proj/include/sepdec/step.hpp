// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/geometry.hpp"
#include "sepdec/lattice.hpp"
#include "sepdec/piecewise_linear.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace sepdec {

/// One real value per vertex of a LatticeGraph.
struct VertexFunction {
    std::vector<double> values;
    [[nodiscard]] double operator[](std::size_t v) const { return values[v]; }
    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// f^n(u) = f(x_u) with x_u the vertex's representative sample point.
VertexFunction sample_f(const PlaneSample& sample, const LatticeGraph& graph);

/// True iff every short edge has |f^n(u1) - f^n(u2)| < eps.
bool check_short_edge_lemma(const LatticeGraph& graph, const VertexFunction& fn,
                            const SubgraphViews& views, double eps);

/// floor(f_norm / eps), decided exactly.
std::int64_t compute_F(double f_norm, double eps);

/// ceil(value / eps) for value >= 0, decided exactly.
std::int64_t value_bucket(double value, double eps);

enum class Sign { plus, minus };

/// One sign class of the graph plus a value chain w_0 ... w_top.
///
/// Local vertex ids: 0..base.size()-1 are the class's graph vertices (in
/// increasing graph order), base.size() + i is chain vertex w_i. Levels are
/// |f^n| on base vertices and i*eps on w_i. A class vertex that ends a long
/// horizontal edge is attached to w_{ceil(|f^n(u)|/eps)}. top = F + 1.
struct AugmentedSignGraph {
    Sign sign = Sign::plus;
    bool trivial = true;  // no class vertex in V_hor: no chain, g = 0 on the class
    double eps = 0.0;
    std::int64_t top = 0;
    std::vector<std::uint32_t> base;
    std::vector<double> level;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::int64_t> attachment;  // per base vertex, -1 when not attached
    std::vector<std::size_t> distance;     // BFS distance to w_top, kInfiniteDistance if unreachable

    [[nodiscard]] std::size_t chain_vertex(std::int64_t i) const { return base.size() + static_cast<std::size_t>(i); }
    [[nodiscard]] std::size_t local_count() const noexcept { return level.size(); }
};

AugmentedSignGraph build_augmented(const LatticeGraph& graph, const SubgraphViews& views,
                                   const VertexFunction& fn, Sign sign, double eps, std::int64_t F);

/// Outcome of scanning the four vertex-potential conditions plus the sandwich.
struct PotentialCheck {
    bool short_edges = true;      // |g(u1) - g(u2)| <= eps on short edges
    bool long_horizontal = true;  // |f(u) - g(u)| <= eps on ends of long horizontal edges
    bool long_vertical = true;    // g(u) = 0 on ends of long vertical edges
    bool norm = true;             // ||g|| <= ||f||
    bool sandwich = true;         // g between 0 and f
    [[nodiscard]] bool ok() const noexcept {
        return short_edges && long_horizontal && long_vertical && norm && sandwich;
    }
};

PotentialCheck check_potential(const LatticeGraph& graph, const SubgraphViews& views,
                               const VertexFunction& fn, const VertexFunction& gn, double eps);

/// Discrete potential g^n on the vertices: on each sign class
/// ±max{(F + 1 - d(u)) * eps, 0}, d the distance to the chain top, and 0 on
/// vertices with no path to it.
///
/// `check_eps` (defaults to eps) is the tolerance the conditions are asserted
/// against; a mismatch throws GuaranteeViolated.
VertexFunction discrete_g(const LatticeGraph& graph, const SubgraphViews& views,
                          const VertexFunction& fn, double eps, double delta, std::int64_t F,
                          double check_eps = 0.0);

struct FiberGrids {
    std::map<ExactCoord, double> g;  // keyed by lattice p-coordinate
    std::map<ExactCoord, double> h;  // keyed by lattice q-coordinate
};

/// g(x) = g^n of the smallest-j vertex in column x, h(y) = f^n - g^n of the
/// smallest-i vertex in row y. Throws GuaranteeViolated when the per-vertex 3ε,
/// adjacent-column ε or adjacent-row 2ε bounds fail.
FiberGrids fiber_functions(const LatticeGraph& graph, const VertexFunction& fn,
                           const VertexFunction& gn, double eps);

/// Extends a grid of lattice values to the line: linear across adjacent cells,
/// constant for one cell width then linear across gaps, constant tails.
PiecewiseLinear extend_pl(const std::map<ExactCoord, double>& grid, int level);

struct StepOptions {
    int max_n = 24;
};

struct StepResult {
    PiecewiseLinear g = PiecewiseLinear::constant(0.0);
    PiecewiseLinear h = PiecewiseLinear::constant(0.0);
    double eps_used = 0.0;
    double delta_used = 0.0;
    std::int64_t F = 0;
    int level = 0;
    double f_norm = 0.0;
    double residual_sup = 0.0;
    double norm_g = 0.0;
    double norm_h = 0.0;
    std::vector<double> residuals;  // f - g∘p - h∘q per sample point

    // Discrete data the result was built from, kept for independent audits.
    LatticeGraph graph{0, {}, {}, {}};
    SubgraphViews views;
    VertexFunction fn;
    VertexFunction gn;
};

/// Relative shrink applied to eps for the internal construction so that
/// rounding in the reported values cannot break a bound stated for eps.
inline constexpr double kWorkingShrink = 0x1p-30;

/// One approximation step: residual <= 6 eps, ||g|| <= ||f||, ||h|| <= 2||f||,
/// all re-verified before returning.
StepResult decompose_step(const PlaneSample& sample, double eps, const StepOptions& options = {});

/// residual per sample point for a pair of one-variable functions.
std::vector<double> residuals(const PlaneSample& sample, const PiecewiseLinear& g,
                              const PiecewiseLinear& h);

}  // namespace sepdec
