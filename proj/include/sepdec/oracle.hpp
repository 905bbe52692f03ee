// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/geometry.hpp"
#include "sepdec/lattice.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace sepdec {

struct AlignmentLink {
    std::size_t a = 0;
    std::size_t b = 0;
    bool shares_x = false;  // otherwise shares y
};

/// Sample points linked when they share an exact x or an exact y coordinate.
struct AlignmentGraph {
    std::size_t node_count = 0;
    std::vector<AlignmentLink> links;

    /// True iff some node has both an x-link and a y-link (a 3-point array).
    [[nodiscard]] bool has_mixed_node() const;
};

AlignmentGraph build_alignment_graph(const PlaneSample& sample);

struct ExactDecomposition {
    std::map<ExactCoord, mpq_class> g;
    std::map<ExactCoord, mpq_class> h;
};

/// Exact f = g(x) + h(y) on the sample by propagation over shared
/// coordinates. In each connected component the g-value at the x of its
/// smallest-index point is fixed to 0. Throws NotDecomposable when some cycle
/// of shared coordinates carries a nonzero alternating sum.
ExactDecomposition exact_decompose_finite(const PlaneSample& sample);

inline constexpr std::size_t kExhaustiveVertexLimit = 20;

/// True iff every simple path u0 ... uk with |p(u0) - p(u1)| >= alpha and
/// |q(u_{k-1}) - q(uk)| >= alpha has k > l. Throws TooLarge above 20 vertices.
bool verify_theorem1_exhaustive(const LatticeGraph& graph, std::int64_t l, double alpha);

}  // namespace sepdec
