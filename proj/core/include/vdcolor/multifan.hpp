#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vdcolor/coloring.hpp"

namespace vdcolor {

// (r, e0, s0, e1, s1, ..., ep, sp): e0 = r s0 is uncolored and every later
// edge's color is missing at an earlier fan vertex, namely vertices[links[i]].
struct Multifan {
    VertexId center = -1;
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;
    std::vector<int> links;  // links[0] = -1
};

// Fan indices (0 = l0, l1, ..., lt) where the color of e_{l_i} is missing at s_{l_{i-1}}.
struct LinearSequence {
    std::vector<int> indices;
};

// Closure of the fan rooted at the uncolored edge, scanning fan vertices in
// order and their missing colors in ascending order.
Multifan build_maximal_multifan(const PartialColoring& coloring, EdgeId uncolored_edge, VertexId center);
Multifan build_maximal_multifan(const PartialColoring& coloring, EdgeId uncolored_edge);

bool is_multifan(const PartialColoring& coloring, const Multifan& fan);
bool is_maximal(const PartialColoring& coloring, const Multifan& fan);
bool is_linear_sequence(const PartialColoring& coloring, const Multifan& fan, const LinearSequence& seq);

// The sequence from s0 to s_index obtained by following links backwards.
LinearSequence linear_sequence_to(const Multifan& fan, int index);

// Recolors e_{l_{i-1}} with the color of e_{l_i} for i = 1..h, leaving e_{l_h} uncolored.
void shift(PartialColoring& coloring, const Multifan& fan, const LinearSequence& seq, int h);

struct ExtensionStats {
    long long greedy_colored = 0;
    long long fan_shifts = 0;       // progress through a common missing color
    long long chain_switches = 0;   // switches on a color missing at many fan vertices
    long long probe_switches = 0;   // trial switches below the guaranteed palette
    long long walk_steps = 0;       // Kempe-walk completion moves
    int max_rounds = 0;             // largest number of rounds spent on one edge
    bool guaranteed = false;        // palette at or above max{k, Δ+4cm-1}
};

struct Extension {
    PartialColoring coloring;
    int palette = 0;
    ExtensionStats stats;
};

// Extends phi0 (colors of q_edges, in the same order) to a total proper
// coloring of graph with max{k, Δ(graph)+4cm-1} colors. Edges of Q are frozen
// in the result.
Extension extend_precoloring(const MultiGraph& graph, const std::vector<EdgeId>& q_edges,
                             const std::vector<Color>& phi0, int c, int m, int k);

// Same routine with an explicit palette, which may be below the guaranteed
// size. When the fan argument runs out of moves it falls back to a randomized
// Kempe walk; returns nullopt if that fails too.
std::optional<Extension> try_extend(const MultiGraph& graph, const std::vector<EdgeId>& q_edges,
                                    const std::vector<Color>& phi0, int palette, std::uint64_t seed,
                                    long long walk_budget);

}  // namespace vdcolor
