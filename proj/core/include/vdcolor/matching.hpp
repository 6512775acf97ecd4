#pragma once

#include <vector>

#include "vdcolor/coloring.hpp"
#include "vdcolor/graph.hpp"

namespace vdcolor {

struct HallResult {
    bool perfect = false;
    std::vector<EdgeId> matching;
    // When no perfect matching exists: a set S of left vertices with |N(S)| < |S|.
    std::vector<VertexId> violator;
};

// Hopcroft-Karp on the edges of `graph` joining `left` to `right` (other edges
// are ignored). The sides must have equal size.
HallResult hall_matching(const MultiGraph& graph, const std::vector<VertexId>& left,
                         const std::vector<VertexId>& right);

// Neighborhood of `subset` inside `right` through edges of `graph`.
std::vector<VertexId> side_neighborhood(const MultiGraph& graph, const std::vector<VertexId>& subset,
                                        const std::vector<VertexId>& right);

// Maximum matching on the allowed edges of a general graph (Edmonds' blossom
// algorithm), grown from `initial`, which must be a matching of allowed edges.
std::vector<EdgeId> maximum_matching(const MultiGraph& graph, const std::vector<char>& allowed,
                                     const std::vector<EdgeId>& initial = {});

// Side assignment of a bipartite graph (0/1 per vertex); throws ColoringError
// naming an odd cycle edge otherwise.
std::vector<int> bipartition(const MultiGraph& graph);

// Proper coloring of a bipartite multigraph with exactly Δ colors. Regular
// inputs are split into perfect matchings one color at a time.
PartialColoring konig_color(const MultiGraph& graph);

}  // namespace vdcolor
