#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vdcolor/coloring.hpp"

namespace vdcolor {

// Vizing-fan coloring of a simple graph with k >= Δ+1 colors. Colors every
// uncolored edge of `coloring` and leaves the colored ones alone unless a Kempe
// inversion touches them; frozen edges are never touched, so the caller must
// ensure no frozen edge lies in the graph when relying on the guarantee.
void misra_gries_complete(PartialColoring& coloring);

// Randomized Kempe-walk completion: colors all uncolored edges without changing
// frozen ones. Returns false if `max_steps` moves were not enough.
bool complete_coloring(PartialColoring& coloring, std::uint64_t seed, long long max_steps,
                       long long* steps_used = nullptr);

// Total proper k-coloring whose class sizes differ by at most one.
PartialColoring equitable_edge_coloring(const MultiGraph& graph, int k, std::uint64_t seed = 1);

// Kempe switches on odd alternating paths between the largest and the
// smallest classes until all class sizes differ by at most one. Frozen edges
// stay put. Returns false if no admissible path was left.
bool equalize_classes(PartialColoring& coloring);

struct BalanceReport {
    int spread = 0;
    long long switches = 0;
    // (g, h): the largest missing-count gap and how many color pairs attain it.
    std::vector<std::pair<int, long long>> g_history;
};

struct BalanceResult {
    PartialColoring coloring;
    BalanceReport report;
};

// Rebalances |missing^-1(i)| over all colors to a spread <= 4m+1 by Kempe
// switches on chains avoiding `frozen`. The initial coloring must be total;
// each color may appear on at most m frozen edges. Missing counts all share
// the parity of |V|, so with m = 0 a spread of 2 can be forced (C4 with three
// colors ends at {2, 2, 0}); the routine stops there.
BalanceResult balance_missing(const MultiGraph& graph, const PartialColoring& initial,
                              const std::vector<EdgeId>& frozen, int m);

}  // namespace vdcolor
