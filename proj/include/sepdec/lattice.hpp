// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/geometry.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sepdec {

/// Integer cell index (i, j) standing for the lattice point (i/2^n, j/2^n).
struct Cell {
    std::int64_t i = 0;
    std::int64_t j = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct LatticeEdge {
    std::uint32_t a = 0;  // a < b
    std::uint32_t b = 0;
    bool vertical = false;    // |p(a) - p(b)| <= 1/2^n
    bool horizontal = false;  // |q(a) - q(b)| <= 1/2^n
};

/// Graph on the occupied dyadic cells of a sample at level n.
///
/// Vertices are sorted by cell index. Two vertices are joined when their
/// column indices or their row indices differ by at most one. Each vertex
/// carries the smallest sample index lying in its half-open square.
class LatticeGraph {
public:
    LatticeGraph(int level, std::vector<Cell> vertices, std::vector<std::size_t> representatives,
                 std::vector<LatticeEdge> edges);

    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] const std::vector<Cell>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const Cell& cell(std::size_t v) const { return vertices_[v]; }
    [[nodiscard]] std::size_t representative(std::size_t v) const { return representatives_[v]; }
    [[nodiscard]] const std::vector<LatticeEdge>& edges() const noexcept { return edges_; }
    /// Edge ids incident to v.
    [[nodiscard]] const std::vector<std::uint32_t>& incident(std::size_t v) const { return incident_[v]; }
    [[nodiscard]] std::optional<std::size_t> find(const Cell& c) const;

    [[nodiscard]] ExactCoord p(std::size_t v) const { return ExactCoord::dyadic(vertices_[v].i, level_); }
    [[nodiscard]] ExactCoord q(std::size_t v) const { return ExactCoord::dyadic(vertices_[v].j, level_); }
    [[nodiscard]] std::size_t other(std::uint32_t edge, std::size_t v) const {
        const auto& e = edges_[edge];
        return e.a == v ? e.b : e.a;
    }

private:
    int level_;
    std::vector<Cell> vertices_;
    std::vector<std::size_t> representatives_;
    std::vector<LatticeEdge> edges_;
    std::vector<std::vector<std::uint32_t>> incident_;
};

LatticeGraph build_graph(const PlaneSample& sample, int level);

/// Long/short classification of a graph's edges for a given δ.
struct SubgraphViews {
    double delta = 0.0;
    std::vector<bool> long_edge;               // per edge id
    std::vector<std::uint32_t> short_edges;
    std::vector<std::uint32_t> long_horizontal;
    std::vector<std::uint32_t> long_vertical;
    std::vector<bool> in_hor;                  // per vertex: end of a long horizontal edge
    std::vector<bool> in_vert;                 // per vertex: end of a long vertical edge
};

/// Max-metric length of an edge in lattice units (cell widths).
std::int64_t lattice_length(const LatticeGraph& graph, const LatticeEdge& edge);

SubgraphViews classify_edges(const LatticeGraph& graph, double delta);

inline constexpr std::size_t kInfiniteDistance = std::numeric_limits<std::size_t>::max();

/// BFS distance in the full graph from V_hor to V_vert; kInfiniteDistance if
/// either set is empty or they are not connected.
std::size_t hv_separation(const SubgraphViews& views, const LatticeGraph& graph);

/// Smallest level with 1/2^n <= δ/2.
int min_level_for_delta(double delta);

struct Resolution {
    LatticeGraph graph;
    SubgraphViews views;
    std::size_t separation = kInfiniteDistance;
    [[nodiscard]] int level() const noexcept { return graph.level(); }
};

/// Smallest n in [max(first_level, min_level_for_delta(δ)), max_n] whose graph
/// has hv_separation > F - 1. Throws ResolutionExhausted.
Resolution choose_resolution(const PlaneSample& sample, double delta, std::int64_t F, int max_n,
                             int first_level = 0);

/// {"level", "vertices": [[i,j],...], "edges": [[[i1,j1],[i2,j2],{"v","h","long"}],...]}
std::string graph_dump_json(const LatticeGraph& graph, const SubgraphViews& views);

}  // namespace sepdec
