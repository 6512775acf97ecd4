#include "vdcolor/balance.hpp"

#include <algorithm>
#include <string>

#include "vdcolor/rng.hpp"

namespace vdcolor {

namespace {

bool fan_prefix_valid(const PartialColoring& coloring, const std::vector<VertexId>& fan,
                      const std::vector<EdgeId>& fan_edges, std::size_t upto) {
    for (std::size_t j = 1; j <= upto; ++j) {
        const Color c = coloring.color(fan_edges[j]);
        if (c == kNoColor || !coloring.misses(fan[j - 1], c)) return false;
    }
    return true;
}

void color_by_fan(PartialColoring& coloring, EdgeId edge) {
    const MultiGraph& g = coloring.graph();
    const VertexId u = g.endpoints(edge).first;
    std::vector<VertexId> fan{g.other(edge, u)};
    std::vector<EdgeId> fan_edges{edge};
    std::vector<char> in_fan(static_cast<std::size_t>(g.vertex_count()), 0);
    in_fan[fan[0]] = 1;
    for (bool grown = true; grown;) {
        grown = false;
        const VertexId last = fan.back();
        for (const auto& inc : g.incident(u)) {
            const Color c = coloring.color(inc.edge);
            if (c == kNoColor || in_fan[inc.neighbor] || !coloring.misses(last, c)) continue;
            fan.push_back(inc.neighbor);
            fan_edges.push_back(inc.edge);
            in_fan[inc.neighbor] = 1;
            grown = true;
            break;
        }
    }
    const Color c = coloring.missing(u).first();
    const Color d = coloring.missing(fan.back()).first();
    if (c == kNoColor || d == kNoColor) throw ColoringError("fan coloring needs k >= max degree + 1");
    if (c != d && !coloring.misses(u, d)) kempe_switch(coloring, kempe_chain(coloring, u, d, c));
    for (std::size_t i = 0; i < fan.size(); ++i) {
        if (!coloring.misses(fan[i], d) || !fan_prefix_valid(coloring, fan, fan_edges, i)) continue;
        for (std::size_t j = 0; j < i; ++j) {
            const Color next = coloring.color(fan_edges[j + 1]);
            coloring.unassign(fan_edges[j + 1]);
            coloring.assign(fan_edges[j], next);
        }
        coloring.assign(fan_edges[i], d);
        return;
    }
    throw ColoringError("fan rotation target not found");
}

}  // namespace

void misra_gries_complete(PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    if (!g.is_simple()) throw ColoringError("fan coloring requires a simple graph");
    if (coloring.palette() < g.max_degree() + 1) throw ColoringError("fan coloring needs k >= max degree + 1");
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!coloring.colored(e)) color_by_fan(coloring, e);
}

bool complete_coloring(PartialColoring& coloring, std::uint64_t seed, long long max_steps,
                       long long* steps_used) {
    const MultiGraph& g = coloring.graph();
    Rng rng(seed);
    std::vector<EdgeId> pending;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!coloring.colored(e)) pending.push_back(e);

    long long step = 0;
    auto report = [&](bool ok) {
        if (steps_used) *steps_used = step;
        return ok;
    };
    for (; !pending.empty(); ++step) {
        if (step >= max_steps) return report(false);
        const std::size_t pick = rng.below(pending.size());
        const EdgeId e = pending[pick];
        pending[pick] = pending.back();
        pending.pop_back();
        const auto [u, v] = g.endpoints(e);

        const Color common = coloring.missing(u).first_common(coloring.missing(v));
        if (common != kNoColor) {
            coloring.assign(e, common);
            continue;
        }
        auto mu = coloring.missing(u).members();
        auto mv = coloring.missing(v).members();
        if (mu.empty() || mv.empty()) {
            throw ColoringError("palette smaller than the degree at an endpoint of edge " +
                                std::to_string(e));
        }
        rng.shuffle(mu);
        rng.shuffle(mv);

        // A Kempe switch that frees a common color at u and v.
        bool done = false;
        for (std::size_t a = 0; a < mu.size() && a < 4 && !done; ++a) {
            for (std::size_t b = 0; b < mv.size() && b < 4 && !done; ++b) {
                const Color alpha = mu[a], beta = mv[b];
                const KempeChain at_v = kempe_chain(coloring, v, alpha, beta);
                if (!at_v.contains_vertex(g, u) && !chain_has_frozen(coloring, at_v)) {
                    kempe_switch(coloring, at_v);
                    coloring.assign(e, alpha);
                    done = true;
                    break;
                }
                const KempeChain at_u = kempe_chain(coloring, u, alpha, beta);
                if (!at_u.contains_vertex(g, v) && !chain_has_frozen(coloring, at_u)) {
                    kempe_switch(coloring, at_u);
                    coloring.assign(e, beta);
                    done = true;
                }
            }
        }
        if (done) continue;

        // Shift: take a color missing at one end away from the other end.
        std::vector<std::pair<EdgeId, Color>> moves;
        for (Color beta : mv) {
            const EdgeId f = coloring.edge_with(u, beta);
            if (f >= 0 && !coloring.frozen(f)) moves.emplace_back(f, beta);
        }
        for (Color alpha : mu) {
            const EdgeId f = coloring.edge_with(v, alpha);
            if (f >= 0 && !coloring.frozen(f)) moves.emplace_back(f, alpha);
        }
        if (moves.empty()) {
            pending.push_back(e);
            continue;
        }
        const auto [f, c] = moves[rng.below(moves.size())];
        coloring.unassign(f);
        coloring.assign(e, c);
        pending.push_back(f);
    }
    return report(true);
}

bool equalize_classes(PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    const int k = coloring.palette();
    if (k < 2) return true;
    std::vector<int> size(static_cast<std::size_t>(k + 1), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (coloring.colored(e)) ++size[coloring.color(e)];

    while (true) {
        Color big = 1, small = 1;
        for (Color c = 2; c <= k; ++c) {
            if (size[c] > size[big]) big = c;
            if (size[c] < size[small]) small = c;
        }
        if (size[big] - size[small] <= 1) return true;
        bool switched = false;
        // Try the smallest class first, then any class at least two below `big`.
        std::vector<Color> partners{small};
        for (Color c = 1; c <= k; ++c)
            if (c != small && size[big] - size[c] >= 2) partners.push_back(c);
        for (Color beta : partners) {
            std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
            for (EdgeId e = 0; e < g.edge_count() && !switched; ++e) {
                if (coloring.color(e) != big || seen[e]) continue;
                const KempeChain chain = kempe_chain(coloring, g.endpoints(e).first, big, beta);
                int balance = 0;
                for (EdgeId f : chain.edges) {
                    seen[f] = 1;
                    balance += coloring.color(f) == big ? 1 : -1;
                }
                if (balance <= 0 || chain_has_frozen(coloring, chain)) continue;
                kempe_switch(coloring, chain);
                --size[big];
                ++size[beta];
                switched = true;
            }
            if (switched) break;
        }
        if (!switched) return false;
    }
}

PartialColoring equitable_edge_coloring(const MultiGraph& graph, int k, std::uint64_t seed) {
    if (graph.edge_count() > 0 && k < graph.max_degree()) {
        throw ColoringError("palette of " + std::to_string(k) + " colors is below the maximum degree " +
                            std::to_string(graph.max_degree()));
    }
    PartialColoring coloring(graph, k);
    if (graph.is_simple() && k >= graph.max_degree() + 1) {
        misra_gries_complete(coloring);
    } else {
        const long long budget = 2000LL * (graph.edge_count() + 1) * (graph.vertex_count() + 1);
        if (!complete_coloring(coloring, seed, budget)) {
            throw ColoringError("no proper " + std::to_string(k) + "-edge-coloring found");
        }
    }
    if (!equalize_classes(coloring)) throw ColoringError("class sizes could not be equalized");
    return coloring;
}

namespace {

std::pair<int, long long> gap_potential(const PartialColoring& coloring) {
    const int k = coloring.palette();
    int lo = coloring.missing_count(1), hi = lo;
    for (Color c = 2; c <= k; ++c) {
        lo = std::min(lo, coloring.missing_count(c));
        hi = std::max(hi, coloring.missing_count(c));
    }
    if (hi == lo) return {0, 0};
    long long at_hi = 0, at_lo = 0;
    for (Color c = 1; c <= k; ++c) {
        at_hi += coloring.missing_count(c) == hi;
        at_lo += coloring.missing_count(c) == lo;
    }
    return {hi - lo, at_hi * at_lo};
}

}  // namespace

BalanceResult balance_missing(const MultiGraph& graph, const PartialColoring& initial,
                              const std::vector<EdgeId>& frozen, int m) {
    if (&initial.graph() != &graph) throw ColoringError("coloring belongs to a different graph");
    if (!initial.is_total()) throw ColoringError("balance_missing requires a total coloring");
    if (m < 0) throw ColoringError("frozen multiplicity bound must be non-negative");
    const int k = initial.palette();
    std::vector<int> per_color(static_cast<std::size_t>(k + 1), 0);
    for (EdgeId e : frozen) {
        if (++per_color[initial.color(e)] > m) {
            throw ColoringError("color " + std::to_string(initial.color(e)) + " appears on more than " +
                                std::to_string(m) + " frozen edges");
        }
    }

    BalanceResult result{initial, {}};
    PartialColoring& coloring = result.coloring;
    for (EdgeId e : frozen) coloring.freeze(e);
    BalanceReport& report = result.report;
    if (k < 2) return result;

    const int limit = 4 * m + 1;
    while (true) {
        const auto potential = gap_potential(coloring);
        if (!report.g_history.empty() && !(potential < report.g_history.back())) {
            throw ColoringError("balance potential failed to decrease");
        }
        report.g_history.push_back(potential);
        if (potential.first <= limit) break;
        // A switch at gap 2 only trades the roles of alpha and beta.
        if (potential.first <= 2) break;

        Color alpha = 1, beta = 1;
        for (Color c = 2; c <= k; ++c) {
            if (coloring.missing_count(c) > coloring.missing_count(alpha)) alpha = c;
            if (coloring.missing_count(c) < coloring.missing_count(beta)) beta = c;
        }
        bool switched = false;
        for (VertexId x = 0; x < graph.vertex_count() && !switched; ++x) {
            if (!coloring.misses(x, alpha) || coloring.misses(x, beta)) continue;
            const KempeChain chain = kempe_chain(coloring, x, alpha, beta);
            if (chain.kind != ChainKind::Path || chain_has_frozen(coloring, chain)) continue;
            const VertexId y = chain.endpoints[0] == x ? chain.endpoints[1] : chain.endpoints[0];
            if (y == x || !coloring.misses(y, alpha)) continue;
            kempe_switch(coloring, chain);
            switched = true;
        }
        if (!switched) throw ColoringError("no frozen-free chain joining two vertices missing the same color");
        ++report.switches;
        if (report.switches % 64 == 0 && !verify_proper(coloring)) {
            throw ColoringError("coloring became improper during balancing");
        }
    }
    if (!verify_proper(coloring)) throw ColoringError("coloring became improper during balancing");
    report.spread = missing_spread(coloring);
    return result;
}

}  // namespace vdcolor
