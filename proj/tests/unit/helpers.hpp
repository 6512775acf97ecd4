#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "vdcolor/coloring.hpp"
#include "vdcolor/graph.hpp"
#include "vdcolor/rng.hpp"

namespace testing_helpers {

using namespace vdcolor;

// Random proper partial coloring: edges in random order, each given a random
// color free at both ends (if any), with probability `density`.
inline PartialColoring random_partial(const MultiGraph& g, int k, Rng& rng, double density = 1.0) {
    PartialColoring c(g, k);
    std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) order[e] = e;
    rng.shuffle(order);
    for (EdgeId e : order) {
        if (static_cast<double>(rng.below(1000)) >= density * 1000.0) continue;
        const auto [u, v] = g.endpoints(e);
        std::vector<Color> free;
        for (Color col = 1; col <= k; ++col)
            if (c.misses(u, col) && c.misses(v, col)) free.push_back(col);
        if (!free.empty()) c.assign(e, free[rng.below(free.size())]);
    }
    return c;
}

// Number of vertices missing color c, recounted from the raw edge colors.
inline int missing_recount(const PartialColoring& c, Color col) {
    const MultiGraph& g = c.graph();
    int count = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        bool seen = false;
        for (const auto& inc : g.incident(v)) seen |= c.color(inc.edge) == col;
        count += !seen;
    }
    return count;
}

inline int spread_recount(const PartialColoring& c) {
    int lo = 1 << 30, hi = -1;
    for (Color col = 1; col <= c.palette(); ++col) {
        const int m = missing_recount(c, col);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    return c.palette() == 0 ? 0 : hi - lo;
}

inline bool proper_recount(const PartialColoring& c) {
    const MultiGraph& g = c.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::set<Color> seen;
        for (const auto& inc : g.incident(v)) {
            const Color col = c.color(inc.edge);
            if (col == kNoColor) continue;
            if (col < 1 || col > c.palette() || !seen.insert(col).second) return false;
        }
    }
    return true;
}

inline std::vector<Color> colors_of(const PartialColoring& c) { return c.colors(); }

}  // namespace testing_helpers
