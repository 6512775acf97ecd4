#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vdcolor/coloring.hpp"
#include "vdcolor/graph.hpp"

namespace vdcolor {

enum class Distinction { Proper, Vd, Sd };

// Graph outside the oracle's domain (isolated edge, two isolated vertices, too
// many edges for the color masks).
class OracleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct OracleResult {
    int value = -1;    // -1 when the budget ran out
    bool exact = false;
    int lower = 0;     // every k below this was refuted (or is below a proven bound)
    int upper = -1;    // a witness exists at this k, -1 if none found
    std::optional<std::vector<Color>> witness;
    long long nodes_explored = 0;
};

inline constexpr long long kDefaultOracleBudget = 1'000'000'000LL;

// min k such that C(k, δ) >= n_δ for every degree δ >= 1 present.
int pi_lower_bound(const MultiGraph& graph);

// Exact chromatic index of the requested kind by iterative deepening and
// backtracking. The budget counts search nodes over all depths.
OracleResult exact_index(const MultiGraph& graph, Distinction kind, long long budget = kDefaultOracleBudget);

// Builds the coloring and runs the matching verifier.
bool satisfies(const MultiGraph& graph, const std::vector<Color>& colors, Distinction kind);

}  // namespace vdcolor
