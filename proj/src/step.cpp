// SPDX-License-Identifier: MIT
#include "sepdec/step.hpp"

#include "sepdec/error.hpp"
#include "sepdec/log.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace sepdec {

namespace {

// Largest F with F*eps <= f_norm beyond which a value chain is unreasonable.
constexpr double kMaxChain = 0x1p24;

[[noreturn]] void violated(const std::string& what) { throw Error(ErrorKind::GuaranteeViolated, what); }

// sign of k*eps - value, computed with one rounding so the sign is exact
double scaled_minus(double k, double eps, double value) { return std::fma(k, eps, -value); }

}  // namespace

VertexFunction sample_f(const PlaneSample& sample, const LatticeGraph& graph) {
    VertexFunction fn;
    fn.values.reserve(graph.vertex_count());
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) fn.values.push_back(sample[graph.representative(v)].f);
    return fn;
}

bool check_short_edge_lemma(const LatticeGraph& graph, const VertexFunction& fn, const SubgraphViews& views,
                            double eps) {
    return std::all_of(views.short_edges.begin(), views.short_edges.end(), [&](std::uint32_t e) {
        const auto& edge = graph.edges()[e];
        return std::abs(fn[edge.a] - fn[edge.b]) < eps;
    });
}

std::int64_t compute_F(double f_norm, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    if (!(f_norm >= 0.0) || !std::isfinite(f_norm)) throw Error(ErrorKind::InvalidArgument, "norm must be finite and >= 0");
    double F = std::floor(f_norm / eps);
    if (F > kMaxChain) throw Error(ErrorKind::InvalidArgument, "eps is too small relative to the norm");
    while (scaled_minus(F + 1.0, eps, f_norm) <= 0.0) F += 1.0;
    while (F > 0.0 && scaled_minus(F, eps, f_norm) > 0.0) F -= 1.0;
    return static_cast<std::int64_t>(F);
}

std::int64_t value_bucket(double value, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    if (value <= 0.0) return 0;
    double i = std::ceil(value / eps);
    if (i > kMaxChain + 2.0) throw Error(ErrorKind::InvalidArgument, "eps is too small relative to the value");
    while (i > 0.0 && scaled_minus(i - 1.0, eps, value) >= 0.0) i -= 1.0;
    while (scaled_minus(i, eps, value) < 0.0) i += 1.0;
    return static_cast<std::int64_t>(i);
}

AugmentedSignGraph build_augmented(const LatticeGraph& graph, const SubgraphViews& views, const VertexFunction& fn,
                                   Sign sign, double eps, std::int64_t F) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    AugmentedSignGraph aug;
    aug.sign = sign;
    aug.eps = eps;
    aug.top = F + 1;

    auto in_class = [&](std::size_t v) { return sign == Sign::plus ? fn[v] >= 0.0 : fn[v] < 0.0; };
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> local(graph.vertex_count(), kNone);
    bool touches_hor = false;
    for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
        if (!in_class(v)) continue;
        local[v] = static_cast<std::uint32_t>(aug.base.size());
        aug.base.push_back(v);
        aug.level.push_back(std::abs(fn[v]));
        touches_hor = touches_hor || views.in_hor[v];
    }
    aug.attachment.assign(aug.base.size(), -1);
    aug.trivial = !touches_hor;
    if (aug.trivial) {
        aug.distance.assign(aug.base.size(), kInfiniteDistance);
        return aug;
    }

    for (std::int64_t i = 0; i <= aug.top; ++i) aug.level.push_back(static_cast<double>(i) * eps);

    for (auto e : views.short_edges) {
        const auto& edge = graph.edges()[e];
        if (local[edge.a] != kNone && local[edge.b] != kNone) aug.edges.emplace_back(local[edge.a], local[edge.b]);
    }
    for (std::int64_t i = 0; i < aug.top; ++i) {
        aug.edges.emplace_back(static_cast<std::uint32_t>(aug.chain_vertex(i)),
                               static_cast<std::uint32_t>(aug.chain_vertex(i + 1)));
    }
    for (std::uint32_t k = 0; k < aug.base.size(); ++k) {
        if (!views.in_hor[aug.base[k]]) continue;
        const std::int64_t i = value_bucket(aug.level[k], eps);
        if (i > aug.top) violated("value above the chain top: |f| = " + format_double(aug.level[k]));
        aug.attachment[k] = i;
        aug.edges.emplace_back(static_cast<std::uint32_t>(aug.chain_vertex(i)), k);
    }

    std::vector<std::vector<std::uint32_t>> adj(aug.local_count());
    for (const auto& [a, b] : aug.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    aug.distance.assign(aug.local_count(), kInfiniteDistance);
    const auto source = static_cast<std::uint32_t>(aug.chain_vertex(aug.top));
    aug.distance[source] = 0;
    std::deque<std::uint32_t> queue{source};
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (auto w : adj[v]) {
            if (aug.distance[w] != kInfiniteDistance) continue;
            aug.distance[w] = aug.distance[v] + 1;
            queue.push_back(w);
        }
    }
    return aug;
}

PotentialCheck check_potential(const LatticeGraph& graph, const SubgraphViews& views, const VertexFunction& fn,
                               const VertexFunction& gn, double eps) {
    PotentialCheck check;
    for (auto e : views.short_edges) {
        const auto& edge = graph.edges()[e];
        if (std::abs(gn[edge.a] - gn[edge.b]) > eps) check.short_edges = false;
    }
    for (auto e : views.long_horizontal) {
        const auto& edge = graph.edges()[e];
        for (auto v : {edge.a, edge.b}) {
            if (std::abs(fn[v] - gn[v]) > eps) check.long_horizontal = false;
        }
    }
    for (auto e : views.long_vertical) {
        const auto& edge = graph.edges()[e];
        if (gn[edge.a] != 0.0 || gn[edge.b] != 0.0) check.long_vertical = false;
    }
    double fmax = 0.0, gmax = 0.0;
    for (std::size_t v = 0; v < fn.size(); ++v) {
        fmax = std::max(fmax, std::abs(fn[v]));
        gmax = std::max(gmax, std::abs(gn[v]));
        const bool inside = fn[v] >= 0.0 ? (gn[v] >= 0.0 && gn[v] <= fn[v]) : (gn[v] <= 0.0 && gn[v] >= fn[v]);
        if (!inside) check.sandwich = false;
    }
    check.norm = gmax <= fmax;
    return check;
}

VertexFunction discrete_g(const LatticeGraph& graph, const SubgraphViews& views, const VertexFunction& fn,
                          double eps, double delta, std::int64_t F, double check_eps) {
    if (views.delta != delta) throw Error(ErrorKind::InvalidArgument, "views were classified with another delta");
    if (fn.size() != graph.vertex_count()) throw Error(ErrorKind::InvalidArgument, "f^n does not match the graph");
    if (check_eps == 0.0) check_eps = eps;

    VertexFunction gn;
    gn.values.assign(graph.vertex_count(), 0.0);
    for (Sign sign : {Sign::plus, Sign::minus}) {
        const AugmentedSignGraph aug = build_augmented(graph, views, fn, sign, eps, F);
        if (aug.trivial) continue;
        for (std::size_t k = 0; k < aug.base.size(); ++k) {
            const std::size_t d = aug.distance[k];
            if (d == kInfiniteDistance || static_cast<std::int64_t>(d) >= aug.top) continue;
            const double value = static_cast<double>(aug.top - static_cast<std::int64_t>(d)) * eps;
            gn.values[aug.base[k]] = sign == Sign::plus ? value : -value;
        }
    }

    const PotentialCheck check = check_potential(graph, views, fn, gn, check_eps);
    if (!check.ok()) {
        violated(std::string("vertex potential fails:") + (check.short_edges ? "" : " short-edge") +
                 (check.long_horizontal ? "" : " long-horizontal") + (check.long_vertical ? "" : " long-vertical") +
                 (check.norm ? "" : " norm") + (check.sandwich ? "" : " sandwich"));
    }
    return gn;
}

FiberGrids fiber_functions(const LatticeGraph& graph, const VertexFunction& fn, const VertexFunction& gn,
                           double eps) {
    // Vertices are sorted by (i, j): the first vertex seen in a column has the
    // smallest j, the first seen in a row has the smallest i.
    std::map<std::int64_t, double> g_col;
    std::map<std::int64_t, double> h_row;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        const Cell& c = graph.cell(v);
        g_col.try_emplace(c.i, gn[v]);
        h_row.try_emplace(c.j, fn[v] - gn[v]);
    }

    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        const Cell& c = graph.cell(v);
        const double err = std::abs(fn[v] - g_col.at(c.i) - h_row.at(c.j));
        if (err > 3.0 * eps) violated("vertex error " + format_double(err) + " exceeds 3 eps");
    }
    auto adjacent_variation = [](const std::map<std::int64_t, double>& grid, double bound, const char* what) {
        for (auto it = grid.begin(); std::next(it) != grid.end(); ++it) {
            auto next = std::next(it);
            if (next->first == it->first + 1 && std::abs(next->second - it->second) > bound) {
                violated(std::string(what) + " variation between neighbouring cells exceeds its bound");
            }
        }
    };
    adjacent_variation(g_col, eps, "g");
    adjacent_variation(h_row, 2.0 * eps, "h");

    FiberGrids grids;
    for (const auto& [i, value] : g_col) grids.g.emplace(ExactCoord::dyadic(i, graph.level()), value);
    for (const auto& [j, value] : h_row) grids.h.emplace(ExactCoord::dyadic(j, graph.level()), value);
    return grids;
}

PiecewiseLinear extend_pl(const std::map<ExactCoord, double>& grid, int level) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    const ExactCoord width = ExactCoord::dyadic(1, level);
    std::vector<Breakpoint> bps;
    for (auto it = grid.begin(); it != grid.end(); ++it) {
        bps.push_back({it->first, it->second});
        auto next = std::next(it);
        if (next != grid.end() && next->first - it->first > width) bps.push_back({it->first + width, it->second});
    }
    return PiecewiseLinear(std::move(bps));
}

std::vector<double> residuals(const PlaneSample& sample, const PiecewiseLinear& g, const PiecewiseLinear& h) {
    std::vector<double> r;
    r.reserve(sample.size());
    for (const auto& p : sample.points()) r.push_back(p.f - g(p.x) - h(p.y));
    return r;
}

StepResult decompose_step(const PlaneSample& sample, double eps, const StepOptions& options) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    if (auto w = detect_three_array(sample)) {
        throw Error(ErrorKind::ArrayPresent, "points " + std::to_string(w->a1) + ", " + std::to_string(w->a2) +
                                                 ", " + std::to_string(w->a3) + " form a 3-point array");
    }

    StepResult result;
    result.eps_used = eps;
    result.f_norm = sup_norm(sample);
    const double work = eps * (1.0 - kWorkingShrink);
    result.delta_used = modulus_delta(sample, work);
    result.F = compute_F(result.f_norm, work);

    int first_level = 0;
    for (;;) {
        Resolution res = choose_resolution(sample, result.delta_used, result.F, options.max_n, first_level);
        const int n = res.level();
        VertexFunction fn = sample_f(sample, res.graph);
        if (!check_short_edge_lemma(res.graph, fn, res.views, work)) {
            violated("a short edge carries |Δf^n| >= eps at level " + std::to_string(n));
        }
        VertexFunction gn = discrete_g(res.graph, res.views, fn, work, result.delta_used, result.F, eps);
        FiberGrids grids = fiber_functions(res.graph, fn, gn, eps);
        PiecewiseLinear g = extend_pl(grids.g, n);
        PiecewiseLinear h = extend_pl(grids.h, n);
        std::vector<double> r = residuals(sample, g, h);
        const double sup = sup_norm(r);

        if (sup > 6.0 * eps) {
            log(LogLevel::info, "level " + std::to_string(n) + " leaves residual " + format_double(sup) +
                                    " > 6 eps; refining");
            if (n >= options.max_n) violated("residual stays above 6 eps up to max_n");
            first_level = n + 1;
            continue;
        }

        result.level = n;
        result.g = std::move(g);
        result.h = std::move(h);
        result.residuals = std::move(r);
        result.residual_sup = sup;
        result.norm_g = result.g.sup_norm();
        result.norm_h = result.h.sup_norm();
        if (result.norm_g > result.f_norm) violated("||g|| exceeds ||f||");
        if (result.norm_h > 2.0 * result.f_norm) violated("||h|| exceeds 2||f||");
        result.graph = std::move(res.graph);
        result.views = std::move(res.views);
        result.fn = std::move(fn);
        result.gn = std::move(gn);
        log(LogLevel::debug, "step eps " + format_double(eps) + " delta " + format_double(result.delta_used) +
                                 " F " + std::to_string(result.F) + " level " + std::to_string(n) + " residual " +
                                 format_double(sup));
        return result;
    }
}

}  // namespace sepdec
