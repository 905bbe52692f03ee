// SPDX-License-Identifier: MIT
#include "sepdec/lattice.hpp"

#include "sepdec/error.hpp"
#include "sepdec/log.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <unordered_map>

namespace sepdec {

LatticeGraph::LatticeGraph(int level, std::vector<Cell> vertices, std::vector<std::size_t> representatives,
                           std::vector<LatticeEdge> edges)
    : level_(level),
      vertices_(std::move(vertices)),
      representatives_(std::move(representatives)),
      edges_(std::move(edges)),
      incident_(vertices_.size()) {
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        incident_[edges_[e].a].push_back(e);
        incident_[edges_[e].b].push_back(e);
    }
}

std::optional<std::size_t> LatticeGraph::find(const Cell& c) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), c);
    if (it == vertices_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

LatticeGraph build_graph(const PlaneSample& sample, int level) {
    if (level < 0) throw Error(ErrorKind::InvalidArgument, "level must be nonnegative");

    std::map<Cell, std::size_t> occupied;  // cell -> smallest sample index
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const Cell c{sample[k].x.floor_scaled(level), sample[k].y.floor_scaled(level)};
        occupied.try_emplace(c, k);
    }
    std::vector<Cell> cells;
    std::vector<std::size_t> reps;
    cells.reserve(occupied.size());
    reps.reserve(occupied.size());
    for (const auto& [c, k] : occupied) {
        cells.push_back(c);
        reps.push_back(k);
    }

    std::map<std::int64_t, std::vector<std::uint32_t>> columns;
    std::map<std::int64_t, std::vector<std::uint32_t>> rows;
    for (std::uint32_t v = 0; v < cells.size(); ++v) {
        columns[cells[v].i].push_back(v);
        rows[cells[v].j].push_back(v);
    }

    std::unordered_map<std::uint64_t, std::size_t> index;
    std::vector<LatticeEdge> edges;
    auto add = [&](std::uint32_t a, std::uint32_t b, bool vertical) {
        if (a > b) std::swap(a, b);
        const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto [it, fresh] = index.try_emplace(key, edges.size());
        if (fresh) edges.push_back({a, b, false, false});
        auto& e = edges[it->second];
        (vertical ? e.vertical : e.horizontal) = true;
    };
    // Same or neighbouring column => vertical; same or neighbouring row => horizontal.
    auto connect = [&](const std::map<std::int64_t, std::vector<std::uint32_t>>& groups, bool vertical) {
        for (auto it = groups.begin(); it != groups.end(); ++it) {
            const auto& here = it->second;
            for (std::size_t s = 0; s < here.size(); ++s) {
                for (std::size_t t = s + 1; t < here.size(); ++t) add(here[s], here[t], vertical);
            }
            auto next = std::next(it);
            if (next != groups.end() && next->first == it->first + 1) {
                for (auto a : here) {
                    for (auto b : next->second) add(a, b, vertical);
                }
            }
        }
    };
    connect(columns, true);
    connect(rows, false);

    std::sort(edges.begin(), edges.end(), [](const LatticeEdge& x, const LatticeEdge& y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    return LatticeGraph(level, std::move(cells), std::move(reps), std::move(edges));
}

std::int64_t lattice_length(const LatticeGraph& graph, const LatticeEdge& edge) {
    const Cell& a = graph.cell(edge.a);
    const Cell& b = graph.cell(edge.b);
    return std::max(std::llabs(a.i - b.i), std::llabs(a.j - b.j));
}

SubgraphViews classify_edges(const LatticeGraph& graph, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
    SubgraphViews views;
    views.delta = delta;
    views.long_edge.assign(graph.edges().size(), false);
    views.in_hor.assign(graph.vertex_count(), false);
    views.in_vert.assign(graph.vertex_count(), false);

    // length / 2^n >= delta  <=>  length >= delta * 2^n (exact: delta and 2^n are binary).
    const double threshold = std::ldexp(delta, graph.level());
    for (std::uint32_t e = 0; e < graph.edges().size(); ++e) {
        const auto& edge = graph.edges()[e];
        const bool is_long = static_cast<double>(lattice_length(graph, edge)) >= threshold;
        views.long_edge[e] = is_long;
        if (!is_long) {
            views.short_edges.push_back(e);
            continue;
        }
        if (edge.horizontal) {
            views.long_horizontal.push_back(e);
            views.in_hor[edge.a] = views.in_hor[edge.b] = true;
        }
        if (edge.vertical) {
            views.long_vertical.push_back(e);
            views.in_vert[edge.a] = views.in_vert[edge.b] = true;
        }
    }
    return views;
}

std::size_t hv_separation(const SubgraphViews& views, const LatticeGraph& graph) {
    std::vector<std::size_t> dist(graph.vertex_count(), kInfiniteDistance);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        if (views.in_hor[v]) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        if (views.in_vert[v]) return dist[v];
        for (auto e : graph.incident(v)) {
            const std::size_t w = graph.other(e, v);
            if (dist[w] == kInfiniteDistance) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return kInfiniteDistance;
}

int min_level_for_delta(double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
    int n = 0;
    while (std::ldexp(1.0, -n) > delta / 2.0) ++n;
    return n;
}

Resolution choose_resolution(const PlaneSample& sample, double delta, std::int64_t F, int max_n,
                             int first_level) {
    if (F < 0) throw Error(ErrorKind::InvalidArgument, "F must be nonnegative");
    const int start = std::max(first_level, min_level_for_delta(delta));
    for (int n = start; n <= max_n; ++n) {
        LatticeGraph graph = build_graph(sample, n);
        SubgraphViews views = classify_edges(graph, delta);
        const std::size_t sep = hv_separation(views, graph);
        const bool separated = sep == kInfiniteDistance || static_cast<std::int64_t>(sep) > F - 1;
        log(LogLevel::debug, "level " + std::to_string(n) + ": " + std::to_string(graph.vertex_count()) +
                                 " vertices, " + std::to_string(graph.edges().size()) + " edges, separation " +
                                 (sep == kInfiniteDistance ? std::string("inf") : std::to_string(sep)));
        if (separated) return Resolution{std::move(graph), std::move(views), sep};
    }
    throw Error(ErrorKind::ResolutionExhausted,
                "no level in [" + std::to_string(start) + ", " + std::to_string(max_n) +
                    "] separates long horizontal from long vertical edges by more than F - 1 = " +
                    std::to_string(F - 1));
}

std::string graph_dump_json(const LatticeGraph& graph, const SubgraphViews& views) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& c : graph.vertices()) vertices.push_back({c.i, c.j});
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        const auto& edge = graph.edges()[e];
        const Cell& a = graph.cell(edge.a);
        const Cell& b = graph.cell(edge.b);
        edges.push_back({{a.i, a.j}, {b.i, b.j},
                         {{"v", edge.vertical}, {"h", edge.horizontal}, {"long", bool(views.long_edge[e])}}});
    }
    nlohmann::json doc;
    doc["level"] = graph.level();
    doc["delta"] = views.delta;
    doc["vertices"] = std::move(vertices);
    doc["edges"] = std::move(edges);
    return doc.dump() + "\n";
}

}  // namespace sepdec
