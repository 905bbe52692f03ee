// SPDX-License-Identifier: MIT
#include "oracles.hpp"
#include "sepdec/error.hpp"
#include "sepdec/generate.hpp"
#include "sepdec/oracle.hpp"

#include <doctest.h>

using namespace sepdec;
using oracle::make_sample;

TEST_CASE("alignment graph links") {
    const auto s = make_sample({{"0", "0"}, {"0", "1"}, {"2", "3"}, {"5", "3"}});
    const auto a = build_alignment_graph(s);
    REQUIRE(a.links.size() == 2);
    CHECK(a.links[0].a == 0);
    CHECK(a.links[0].b == 1);
    CHECK(a.links[0].shares_x);
    CHECK_FALSE(a.links[1].shares_x);
    CHECK_FALSE(a.has_mixed_node());
    CHECK(build_alignment_graph(make_sample({{"0", "0"}, {"0", "1"}, {"1", "1"}})).has_mixed_node());
}

TEST_CASE("exact_decompose_finite: one column") {
    const auto s = make_sample({{"0", "0", 0.75}, {"0", "1", -2.5}});
    const auto d = exact_decompose_finite(s);
    CHECK(d.g.size() == 1);
    CHECK(d.g.at(ExactCoord(0)) == 0);
    CHECK(d.h.at(ExactCoord(0)) == mpq_class(3, 4));
    CHECK(d.h.at(ExactCoord(1)) == mpq_class(-5, 2));
}

TEST_CASE("exact_decompose_finite: rectangle is not decomposable") {
    const auto s = make_sample({{"0", "0", 0.0}, {"0", "1", 0.0}, {"1", "0", 0.0}, {"1", "1", 1.0}});
    CHECK_THROWS_WITH_AS((void)exact_decompose_finite(s), doctest::Contains("NotDecomposable"), Error);
    const auto flat = make_sample({{"0", "0", 1.0}, {"0", "1", 2.0}, {"1", "0", 3.0}, {"1", "1", 4.0}});
    CHECK_NOTHROW((void)exact_decompose_finite(flat));
}

TEST_CASE("exact_decompose_finite recovers additive functions exactly") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = generate(static_cast<Family>(seed % 3), 100, seed, FunctionKind::additive);
        const auto d = exact_decompose_finite(s);
        for (const auto& p : s.points()) CHECK(mpq_class(d.g.at(p.x) + d.h.at(p.y)) == mpq_class(p.f));
    }
}

TEST_CASE("exact_decompose_finite never fails on generated no-array samples") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto s = generate(static_cast<Family>(seed % 3), 150, seed);
        CHECK_NOTHROW((void)exact_decompose_finite(s));
    }
}

TEST_CASE("exact_decompose_finite gauge: smallest-index node has g = 0") {
    const auto s = make_sample({{"3", "0", 5.0}, {"3", "1", 6.0}, {"7", "2", 1.0}, {"8", "2", 4.0}});
    const auto d = exact_decompose_finite(s);
    CHECK(d.g.at(ExactCoord(3)) == 0);
    CHECK(d.g.at(ExactCoord(7)) == 0);
    CHECK(d.g.at(ExactCoord(8)) == 3);
}

TEST_CASE("verify_theorem1_exhaustive examples") {
    const auto none = build_graph(make_sample({{"0.1", "0.1"}, {"0.6", "0.6"}}), 1);
    CHECK(verify_theorem1_exhaustive(none, 3, 1.0));

    // u0=(0,0) -- u1=(3,0) horizontal with p-gap 3/4, u1 -- u2=(3,3) vertical with q-gap 3/4.
    const auto path = build_graph(make_sample({{"0", "0"}, {"0.75", "0"}, {"0.75", "0.75"}}), 2);
    CHECK_FALSE(verify_theorem1_exhaustive(path, 2, 0.5));
    CHECK(verify_theorem1_exhaustive(path, 1, 0.5));
}

TEST_CASE("verify_theorem1_exhaustive refuses large graphs") {
    std::vector<oracle::RawPoint> raw;
    for (int k = 0; k < 25; ++k) raw.push_back({std::to_string(k), std::to_string(k), 0.0});
    const auto g = build_graph(make_sample(raw), 0);
    CHECK_THROWS_WITH_AS((void)verify_theorem1_exhaustive(g, 2, 0.5), doctest::Contains("TooLarge"), Error);
}

TEST_CASE("BFS proxy implies the exhaustive check on small staircases") {
    oracle::Gen gen(1234);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = gen.grid_sample(static_cast<std::size_t>(gen.range(3, 12)), 8);
        for (int n = 2; n <= 4; ++n) {
            const auto g = build_graph(s, n);
            if (g.vertex_count() > kExhaustiveVertexLimit) continue;
            const double delta = std::ldexp(1.0, -n + 1);
            const auto sep = hv_separation(classify_edges(g, delta), g);
            for (std::int64_t l = 1; l <= 5; ++l) {
                if (sep != kInfiniteDistance && static_cast<std::int64_t>(sep) <= l - 2) continue;
                CHECK(verify_theorem1_exhaustive(g, l, delta));
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}
