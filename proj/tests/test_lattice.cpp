// SPDX-License-Identifier: MIT
#include "oracles.hpp"
#include "sepdec/error.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace sepdec;
using oracle::make_sample;

TEST_CASE("build_graph: single cell") {
    const auto g = build_graph(make_sample({{"0.1", "0.1"}}), 1);
    REQUIRE(g.vertex_count() == 1);
    CHECK(g.cell(0) == Cell{0, 0});
    CHECK(g.edges().empty());
}

TEST_CASE("build_graph: two cells in one row") {
    const auto g = build_graph(make_sample({{"0.1", "0.1"}, {"0.9", "0.1"}}), 1);
    REQUIRE(g.vertex_count() == 2);
    CHECK(g.cell(0) == Cell{0, 0});
    CHECK(g.cell(1) == Cell{1, 0});
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].horizontal);
    CHECK(g.edges()[0].vertical);
}

TEST_CASE("build_graph: half-open cells") {
    const auto g = build_graph(make_sample({{"0.5", "0"}, {"0.4999", "0"}, {"1", "1"}}), 1);
    CHECK(g.vertex_count() == 3);
    CHECK(g.find(Cell{1, 0}).has_value());
    CHECK(g.find(Cell{0, 0}).has_value());
    CHECK(g.find(Cell{2, 2}).has_value());
    CHECK_FALSE(g.find(Cell{1, 1}).has_value());
}

TEST_CASE("build_graph matches the all-pairs projection rule") {
    oracle::Gen gen(150);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = gen.grid_sample(150, 1000);
        const auto g = build_graph(s, 6);
        CHECK(oracle::graph_edges(g) == oracle::all_pairs_edges(s, 6));
        const auto cells = oracle::occupied_cells(s, 6);
        REQUIRE(g.vertex_count() == cells.size());
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const auto it = cells.find({g.cell(v).i, g.cell(v).j});
            REQUIRE(it != cells.end());
            CHECK(g.representative(v) == it->second);
        }
    }
}

TEST_CASE("build_graph rejects negative levels") {
    CHECK_THROWS_AS((void)build_graph(make_sample({{"0", "0"}}), -1), Error);
}

TEST_CASE("classify_edges examples") {
    const auto g = build_graph(make_sample({{"0", "0"}, {"0", "0.5"}}), 3);
    REQUIRE(g.edges().size() == 1);
    const auto near = classify_edges(g, 0.3);
    CHECK(near.long_edge[0]);
    CHECK(near.long_vertical.size() == 1);
    CHECK(near.long_horizontal.empty());
    CHECK(near.short_edges.empty());
    CHECK(near.in_vert[0]);
    CHECK(near.in_vert[1]);

    const auto far = classify_edges(g, 0.75);
    CHECK_FALSE(far.long_edge[0]);
    CHECK(far.short_edges.size() == 1);
    CHECK(far.long_vertical.empty());

    CHECK_THROWS_AS((void)classify_edges(g, 0.0), Error);
}

TEST_CASE("classify_edges matches a per-edge distance comparison") {
    oracle::Gen gen(21);
    for (double delta : {0.03125, 0.1, 0.25, 0.5}) {
        const auto s = gen.grid_sample(120, 64);
        const auto g = build_graph(s, 5);
        const auto views = classify_edges(g, delta);
        const auto c = oracle::classify(g, delta);
        CHECK(views.long_edge == c.long_edge);
        CHECK(views.in_hor == c.hor);
        CHECK(views.in_vert == c.vert);
        std::size_t hor = 0, vert = 0, shorts = 0;
        for (std::size_t k = 0; k < g.edges().size(); ++k) {
            if (!c.long_edge[k]) ++shorts;
            if (c.long_edge[k] && g.edges()[k].horizontal) ++hor;
            if (c.long_edge[k] && g.edges()[k].vertical) ++vert;
        }
        CHECK(views.short_edges.size() == shorts);
        CHECK(views.long_horizontal.size() == hor);
        CHECK(views.long_vertical.size() == vert);
    }
}

TEST_CASE("hv_separation examples") {
    const auto curve = build_graph(make_sample({{"0.1", "0.1"}, {"0.6", "0.6"}}), 1);
    CHECK(hv_separation(classify_edges(curve, 1.0), curve) == kInfiniteDistance);

    const auto corner = build_graph(make_sample({{"0", "0"}, {"0", "0.75"}, {"0.75", "0.75"}}), 2);
    CHECK(hv_separation(classify_edges(corner, 0.5), corner) == 0);
}

TEST_CASE("hv_separation matches exhaustive BFS on staircases") {
    // x_k = k/8, y alternates so rows and columns pair up: a staircase of nearly aligned points.
    oracle::Gen gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SamplePoint> pts;
        const int steps = 3 + static_cast<int>(gen.range(0, 4));
        for (int k = 0; k < steps; ++k) {
            const mpq_class base(k, steps);
            const mpq_class jitter(gen.range(0, 50), 1000);
            pts.push_back({ExactCoord(base), ExactCoord(mpq_class(base + jitter)), 0.0});
            pts.push_back({ExactCoord(mpq_class(base + mpq_class(1, 2 * steps))), ExactCoord(mpq_class(base + jitter + mpq_class(1, 997))), 0.0});
        }
        const PlaneSample s(pts);
        for (int n = 1; n <= 5; ++n) {
            const auto g = build_graph(s, n);
            for (double delta : {0.125, 0.25}) {
                CHECK(hv_separation(classify_edges(g, delta), g) == oracle::exhaustive_separation(g, delta));
            }
        }
    }
}

TEST_CASE("hv_separation is positive iff the long classes are disjoint") {
    oracle::Gen gen(31);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = gen.grid_sample(40, 16);
        const auto g = build_graph(s, 3);
        const auto views = classify_edges(g, 0.25);
        bool meet = false;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) meet = meet || (views.in_hor[v] && views.in_vert[v]);
        CHECK((hv_separation(views, g) > 0) == !meet);
    }
}

TEST_CASE("min_level_for_delta") {
    CHECK(min_level_for_delta(1.0) == 1);
    CHECK(min_level_for_delta(0.5) == 2);
    CHECK(min_level_for_delta(0.125) == 4);
}

TEST_CASE("choose_resolution on a strictly increasing curve") {
    oracle::Gen gen(8);
    const auto s = gen.lipschitz_curve(60);
    const double delta = 0.0625;
    const auto res = choose_resolution(s, delta, 5, 24);
    int expect = -1;
    for (int n = 0; n <= 24 && expect < 0; ++n) {
        if (std::ldexp(1.0, -n) > delta / 2) continue;
        const auto g = build_graph(s, n);
        if (oracle::exhaustive_separation(g, delta) > 4) expect = n;
    }
    CHECK(res.level() == expect);
    CHECK(std::ldexp(1.0, -res.level()) <= delta / 2);
    CHECK(hv_separation(res.views, res.graph) > 4);
}

TEST_CASE("choose_resolution on a 3-array is exhausted") {
    const auto s = make_sample({{"0", "0"}, {"0", "1"}, {"1", "1"}});
    for (double delta : {0.5, 0.125}) {
        CHECK_THROWS_WITH_AS((void)choose_resolution(s, delta, 1, 16), doctest::Contains("ResolutionExhausted"), Error);
    }
}

TEST_CASE("choose_resolution with F = 0 only needs the cell width") {
    const auto s = make_sample({{"0", "0"}, {"0", "1"}, {"1", "1"}});
    const auto res = choose_resolution(s, 0.25, 0, 16);
    CHECK(res.level() == 3);
}

TEST_CASE("graph dump JSON") {
    const auto g = build_graph(make_sample({{"0", "0"}, {"0", "0.75"}}), 2);
    const auto j = nlohmann::json::parse(graph_dump_json(g, classify_edges(g, 0.5)));
    CHECK(j["level"] == 2);
    CHECK(j["vertices"] == nlohmann::json::parse("[[0,0],[0,3]]"));
    CHECK(j["edges"].size() == 1);
    CHECK(j["edges"][0][2]["v"] == true);
    CHECK(j["edges"][0][2]["h"] == false);
    CHECK(j["edges"][0][2]["long"] == true);
}
