// SPDX-License-Identifier: MIT
#include "sepdec/oracle.hpp"

#include "sepdec/error.hpp"

#include <cmath>
#include <deque>
#include <functional>

namespace sepdec {

bool AlignmentGraph::has_mixed_node() const {
    std::vector<bool> x_link(node_count, false), y_link(node_count, false);
    for (const auto& l : links) {
        auto& flags = l.shares_x ? x_link : y_link;
        flags[l.a] = flags[l.b] = true;
    }
    for (std::size_t v = 0; v < node_count; ++v) {
        if (x_link[v] && y_link[v]) return true;
    }
    return false;
}

AlignmentGraph build_alignment_graph(const PlaneSample& sample) {
    AlignmentGraph graph;
    graph.node_count = sample.size();
    std::map<ExactCoord, std::vector<std::size_t>> by_x, by_y;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        by_x[sample[i].x].push_back(i);
        by_y[sample[i].y].push_back(i);
    }
    for (bool shares_x : {true, false}) {
        for (const auto& [coord, group] : shares_x ? by_x : by_y) {
            for (std::size_t s = 0; s < group.size(); ++s) {
                for (std::size_t t = s + 1; t < group.size(); ++t) graph.links.push_back({group[s], group[t], shares_x});
            }
        }
    }
    return graph;
}

ExactDecomposition exact_decompose_finite(const PlaneSample& sample) {
    // Bipartite graph: x-values and y-values are nodes, every sample point is
    // an edge x -- y carrying f. A spanning tree fixes g and h; every other
    // edge must be consistent.
    std::map<ExactCoord, std::vector<std::size_t>> by_x, by_y;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        by_x[sample[i].x].push_back(i);
        by_y[sample[i].y].push_back(i);
    }
    ExactDecomposition out;
    std::vector<bool> seen(sample.size(), false);
    for (std::size_t root = 0; root < sample.size(); ++root) {
        if (seen[root]) continue;
        out.g[sample[root].x] = 0;
        std::deque<std::size_t> queue{root};
        seen[root] = true;
        while (!queue.empty()) {
            const std::size_t k = queue.front();
            queue.pop_front();
            const auto& pt = sample[k];
            const mpq_class f(pt.f);
            auto gx = out.g.find(pt.x);
            auto hy = out.h.find(pt.y);
            if (gx == out.g.end()) gx = out.g.emplace(pt.x, f - hy->second).first;
            if (hy == out.h.end()) hy = out.h.emplace(pt.y, f - gx->second).first;
            for (std::size_t other : by_x[pt.x]) {
                if (!seen[other]) seen[other] = true, queue.push_back(other);
            }
            for (std::size_t other : by_y[pt.y]) {
                if (!seen[other]) seen[other] = true, queue.push_back(other);
            }
        }
    }
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const auto& pt = sample[k];
        if (out.g.at(pt.x) + out.h.at(pt.y) != mpq_class(pt.f)) {
            throw Error(ErrorKind::NotDecomposable,
                        "point " + std::to_string(k) + " closes a cycle of shared coordinates with nonzero alternating sum");
        }
    }
    return out;
}

bool verify_theorem1_exhaustive(const LatticeGraph& graph, std::int64_t l, double alpha) {
    if (graph.vertex_count() > kExhaustiveVertexLimit) {
        throw Error(ErrorKind::TooLarge, std::to_string(graph.vertex_count()) + " vertices exceed the exhaustive limit");
    }
    const double threshold = std::ldexp(alpha, graph.level());
    auto p_gap = [&](std::size_t a, std::size_t b) {
        return static_cast<double>(std::llabs(graph.cell(a).i - graph.cell(b).i)) >= threshold;
    };
    auto q_gap = [&](std::size_t a, std::size_t b) {
        return static_cast<double>(std::llabs(graph.cell(a).j - graph.cell(b).j)) >= threshold;
    };

    std::vector<bool> on_path(graph.vertex_count(), false);
    // Extends the simple path ending at v (k edges so far); true if a violating path exists.
    std::function<bool(std::size_t, std::int64_t)> extend = [&](std::size_t v, std::int64_t k) {
        if (k >= l) return false;
        for (auto e : graph.incident(v)) {
            const std::size_t w = graph.other(e, v);
            if (on_path[w]) continue;
            if (q_gap(v, w)) return true;  // length k + 1 <= l
            on_path[w] = true;
            const bool found = extend(w, k + 1);
            on_path[w] = false;
            if (found) return true;
        }
        return false;
    };

    if (l < 1) return true;
    for (std::size_t u0 = 0; u0 < graph.vertex_count(); ++u0) {
        on_path[u0] = true;
        for (auto e : graph.incident(u0)) {
            const std::size_t u1 = graph.other(e, u0);
            if (!p_gap(u0, u1)) continue;
            if (q_gap(u0, u1)) {
                on_path[u0] = false;
                return false;
            }
            on_path[u1] = true;
            const bool found = extend(u1, 1);
            on_path[u1] = false;
            if (found) {
                on_path[u0] = false;
                return false;
            }
        }
        on_path[u0] = false;
    }
    return true;
}

}  // namespace sepdec
