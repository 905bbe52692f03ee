// SPDX-License-Identifier: MIT
// Randomised invariants over hand-rolled generators.
#include "oracles.hpp"
#include "sepdec/generate.hpp"
#include "sepdec/oracle.hpp"
#include "sepdec/solver.hpp"

#include <doctest.h>

#include <numeric>

using namespace sepdec;

namespace {

PlaneSample permuted(const PlaneSample& s, oracle::Gen& gen) {
    std::vector<SamplePoint> pts = s.points();
    for (std::size_t k = pts.size(); k > 1; --k) std::swap(pts[k - 1], pts[static_cast<std::size_t>(gen.range(0, static_cast<std::int64_t>(k) - 1))]);
    return PlaneSample(pts);
}

// Plants a 3-array by copying coordinates between random points.
PlaneSample plant_array(const PlaneSample& s, oracle::Gen& gen) {
    std::vector<SamplePoint> pts = s.points();
    const auto n = static_cast<std::int64_t>(pts.size());
    const auto a = static_cast<std::size_t>(gen.range(0, n - 1));
    auto b = static_cast<std::size_t>(gen.range(0, n - 1));
    auto c = static_cast<std::size_t>(gen.range(0, n - 1));
    while (b == a) b = static_cast<std::size_t>(gen.range(0, n - 1));
    while (c == a || c == b) c = static_cast<std::size_t>(gen.range(0, n - 1));
    pts[b].x = pts[a].x;
    pts[c].y = pts[a].y;
    if (pts[b].y == pts[a].y || pts[c].x == pts[a].x) return s;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        for (std::size_t m = k + 1; m < pts.size(); ++m) {
            if (pts[k].x == pts[m].x && pts[k].y == pts[m].y) return s;
        }
    }
    return PlaneSample(pts);
}

}  // namespace

TEST_CASE("property: detector agrees with the triple scan up to 300 points") {
    oracle::Gen gen(600);
    for (int trial = 0; trial < 30; ++trial) {
        const auto size = static_cast<std::size_t>(gen.range(1, 300));
        auto s = gen.grid_sample(size, gen.coin() ? 10 * static_cast<std::int64_t>(size) : 3 * static_cast<std::int64_t>(size) + 3);
        if (size >= 3 && gen.coin()) s = plant_array(s, gen);
        CHECK(detect_three_array(s) == oracle::brute_three_array(s));
        CHECK(detect_three_array(s).has_value() == build_alignment_graph(s).has_mixed_node());
    }
}

TEST_CASE("property: graph is invariant under permutation of the points") {
    oracle::Gen gen(601);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = gen.grid_sample(80, 200);
        const auto p = permuted(s, gen);
        for (int n : {2, 4, 7}) {
            const auto a = build_graph(s, n), b = build_graph(p, n);
            CHECK(a.vertices() == b.vertices());
            CHECK(oracle::graph_edges(a) == oracle::graph_edges(b));
        }
    }
}

TEST_CASE("property: level n+1 refines level n") {
    oracle::Gen gen(602);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = gen.grid_sample(60, 5000);
        for (int n = 0; n < 10; ++n) {
            const auto coarse = build_graph(s, n), fine = build_graph(s, n + 1);
            for (const auto& c : fine.vertices()) {
                CHECK(coarse.find(Cell{c.i >> 1, c.j >> 1}).has_value());
            }
        }
    }
}

TEST_CASE("property: separation on curves stays satisfied at finer levels") {
    // Empirical harness only: reports the instances where the condition is lost again.
    int regressions = 0, instances = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = generate(Family::monotone_curve, 100, seed);
        const double eps = sup_norm(s) / 12.0;
        const double delta = modulus_delta(s, eps);
        const auto F = compute_F(sup_norm(s), eps);
        const auto res = choose_resolution(s, delta, F, 24);
        ++instances;
        for (int n = res.level() + 1; n <= std::min(res.level() + 6, 24); ++n) {
            const auto g = build_graph(s, n);
            if (hv_separation(classify_edges(g, delta), g) <= static_cast<std::size_t>(F - 1) && F > 0) ++regressions;
        }
    }
    MESSAGE("curve instances: " << instances << ", finer-level regressions: " << regressions);
    CHECK(regressions == 0);
}

TEST_CASE("property: lattice edge flags and representatives") {
    oracle::Gen gen(603);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = gen.grid_sample(100, 333);
        const int n = static_cast<int>(gen.range(0, 8));
        const auto g = build_graph(s, n);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const auto& pt = s[g.representative(v)];
            CHECK(oracle::cell_index(pt.x, n) == g.cell(v).i);
            CHECK(oracle::cell_index(pt.y, n) == g.cell(v).j);
        }
        const auto views = classify_edges(g, std::ldexp(1.0, -static_cast<int>(gen.range(0, 4))));
        std::vector<int> covered(g.edges().size(), 0);
        for (auto e : views.short_edges) covered[e] |= 1;
        for (auto e : views.long_horizontal) covered[e] |= 2;
        for (auto e : views.long_vertical) covered[e] |= 4;
        for (std::size_t k = 0; k < covered.size(); ++k) {
            CHECK(covered[k] != 0);
            CHECK(((covered[k] & 1) == 0 || covered[k] == 1));
        }
    }
}

TEST_CASE("property: step certificates on random instances") {
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        const auto family = static_cast<Family>(seed % 3);
        const auto s = generate(family, 20 + (seed * 37) % 180, seed, seed % 4 == 0 ? FunctionKind::additive : FunctionKind::smooth);
        const double f_norm = sup_norm(s);
        for (double divisor : {12.0, 24.0}) {
            const double eps = f_norm / divisor;
            const auto step = decompose_step(s, eps);
            CHECK(oracle::residual_sup(s, step.g, step.h) <= 6.0 * eps);
            CHECK(oracle::breakpoint_max(step.g) <= f_norm);
            CHECK(oracle::breakpoint_max(step.h) <= 2.0 * f_norm);
            const auto scan = oracle::scan_conditions(step.graph, step.fn.values, step.gn.values, eps, step.delta_used);
            CHECK(scan.all());
            CHECK(oracle::modulus_holds(s, step.delta_used, eps));
            CHECK(std::ldexp(1.0, -step.level) <= step.delta_used / 2);
            for (const auto& p : s.points()) CHECK(std::abs(p.f - step.fn[*step.graph.find({oracle::cell_index(p.x, step.level), oracle::cell_index(p.y, step.level)})]) < eps);
        }
    }
}

TEST_CASE("property: accumulated PL functions equal per-step sums") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto s = generate(static_cast<Family>(seed % 3), 90, seed);
        PlaneSample current = s;
        PiecewiseLinear g_total = PiecewiseLinear::constant(0.0), h_total = PiecewiseLinear::constant(0.0);
        std::vector<StepResult> steps;
        for (int it = 0; it < 3 && sup_norm(current) > 0.0; ++it) {
            steps.push_back(decompose_step(current, sup_norm(current) / 12.0));
            g_total = g_total + steps.back().g;
            h_total = h_total + steps.back().h;
            current = current.with_values(steps.back().residuals);
        }
        for (const auto& p : s.points()) {
            double g = 0.0, h = 0.0;
            for (const auto& st : steps) {
                g += st.g(p.x);
                h += st.h(p.y);
            }
            CHECK(g_total(p.x) == doctest::Approx(g).epsilon(1e-12).scale(1.0));
            CHECK(h_total(p.y) == doctest::Approx(h).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("property: solver envelope and norm summability") {
    for (std::uint64_t seed = 30; seed <= 38; ++seed) {
        const auto s = generate(static_cast<Family>(seed % 3), 120, seed);
        const auto r = decompose(s);
        const double f_norm = sup_norm(s);
        CHECK(r.converged);
        for (const auto& t : r.trace) CHECK(t.residual_sup <= f_norm * std::ldexp(1.0, -t.iter));
        CHECK(oracle::breakpoint_max(r.g_total) <= 2.0 * f_norm);
        CHECK(oracle::breakpoint_max(r.h_total) <= 4.0 * f_norm);
        CHECK(r.final_residual == oracle::residual_sup(s, r.g_total, r.h_total));
    }
}

TEST_CASE("property: oracle round trip on additive samples is exact") {
    oracle::Gen gen(604);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto s = generate(static_cast<Family>(seed % 3), static_cast<std::size_t>(gen.range(1, 200)), seed, FunctionKind::additive);
        const auto d = exact_decompose_finite(s);
        for (const auto& p : s.points()) CHECK(mpq_class(d.g.at(p.x) + d.h.at(p.y)) == mpq_class(p.f));
    }
}
