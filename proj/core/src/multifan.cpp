#include "vdcolor/multifan.hpp"

#include <algorithm>
#include <string>

#include "vdcolor/balance.hpp"

namespace vdcolor {

Multifan build_maximal_multifan(const PartialColoring& coloring, EdgeId uncolored_edge, VertexId center) {
    const MultiGraph& g = coloring.graph();
    if (coloring.colored(uncolored_edge)) {
        throw ColoringError("multifan root edge " + std::to_string(uncolored_edge) + " is colored");
    }
    const auto [a, b] = g.endpoints(uncolored_edge);
    if (center != a && center != b) throw ColoringError("multifan center is not an endpoint of the root edge");
    Multifan fan;
    fan.center = center;
    fan.edges.push_back(uncolored_edge);
    fan.vertices.push_back(g.other(uncolored_edge, center));
    fan.links.push_back(-1);
    std::vector<char> used(static_cast<std::size_t>(g.edge_count()), 0);
    used[uncolored_edge] = 1;
    for (std::size_t j = 0; j < fan.vertices.size(); ++j) {
        for (Color c : coloring.missing(fan.vertices[j]).members()) {
            const EdgeId f = coloring.edge_with(center, c);
            if (f < 0 || used[f]) continue;
            used[f] = 1;
            fan.edges.push_back(f);
            fan.vertices.push_back(g.other(f, center));
            fan.links.push_back(static_cast<int>(j));
        }
    }
    return fan;
}

Multifan build_maximal_multifan(const PartialColoring& coloring, EdgeId uncolored_edge) {
    return build_maximal_multifan(coloring, uncolored_edge, coloring.graph().endpoints(uncolored_edge).first);
}

bool is_multifan(const PartialColoring& coloring, const Multifan& fan) {
    const MultiGraph& g = coloring.graph();
    const std::size_t p = fan.edges.size();
    if (p == 0 || fan.vertices.size() != p || fan.links.size() != p) return false;
    if (coloring.colored(fan.edges[0])) return false;
    std::vector<EdgeId> sorted = fan.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < p; ++i) {
        const auto [a, b] = g.endpoints(fan.edges[i]);
        if (a != fan.center && b != fan.center) return false;
        if (g.other(fan.edges[i], fan.center) != fan.vertices[i]) return false;
        if (i == 0) continue;
        const int j = fan.links[i];
        if (j < 0 || j >= static_cast<int>(i)) return false;
        const Color c = coloring.color(fan.edges[i]);
        if (c == kNoColor || !coloring.misses(fan.vertices[j], c)) return false;
    }
    return true;
}

bool is_maximal(const PartialColoring& coloring, const Multifan& fan) {
    ColorSet missing_on_fan(coloring.palette());
    for (VertexId s : fan.vertices)
        for (Color c : coloring.missing(s).members()) missing_on_fan.insert(c);
    for (Color c : missing_on_fan.members()) {
        const EdgeId f = coloring.edge_with(fan.center, c);
        if (f >= 0 && std::find(fan.edges.begin(), fan.edges.end(), f) == fan.edges.end()) return false;
    }
    return true;
}

bool is_linear_sequence(const PartialColoring& coloring, const Multifan& fan, const LinearSequence& seq) {
    if (seq.indices.empty() || seq.indices[0] != 0) return false;
    for (std::size_t i = 1; i < seq.indices.size(); ++i) {
        const int cur = seq.indices[i], prev = seq.indices[i - 1];
        if (cur <= prev || cur >= static_cast<int>(fan.edges.size())) return false;
        const Color c = coloring.color(fan.edges[cur]);
        if (c == kNoColor || !coloring.misses(fan.vertices[prev], c)) return false;
    }
    return true;
}

LinearSequence linear_sequence_to(const Multifan& fan, int index) {
    LinearSequence seq;
    for (int i = index; i >= 0; i = fan.links[i]) seq.indices.push_back(i);
    std::reverse(seq.indices.begin(), seq.indices.end());
    return seq;
}

void shift(PartialColoring& coloring, const Multifan& fan, const LinearSequence& seq, int h) {
    if (!is_linear_sequence(coloring, fan, seq)) throw ColoringError("invalid linear sequence");
    if (h < 1 || h >= static_cast<int>(seq.indices.size())) throw ColoringError("shift index out of range");
    for (int i = 1; i <= h; ++i) {
        const EdgeId from = fan.edges[seq.indices[i]];
        const EdgeId to = fan.edges[seq.indices[i - 1]];
        const Color c = coloring.color(from);
        coloring.unassign(from);
        coloring.assign(to, c);
    }
}

namespace {

// The sub-fan reachable through linear sequences that avoid frozen edges:
// member fan indices in order, and for each index its predecessor (or -1).
struct FreeFan {
    std::vector<int> members;
    std::vector<int> parent;
};

FreeFan free_part(const PartialColoring& coloring, const Multifan& fan) {
    FreeFan out;
    out.parent.assign(fan.edges.size(), -2);
    out.members.push_back(0);
    out.parent[0] = -1;
    for (std::size_t i = 1; i < fan.edges.size(); ++i) {
        if (coloring.frozen(fan.edges[i])) continue;
        const Color c = coloring.color(fan.edges[i]);
        for (int j : out.members) {
            if (coloring.misses(fan.vertices[j], c)) {
                out.parent[i] = j;
                out.members.push_back(static_cast<int>(i));
                break;
            }
        }
    }
    return out;
}

LinearSequence free_sequence_to(const FreeFan& free, int index) {
    LinearSequence seq;
    for (int i = index; i >= 0; i = free.parent[i]) seq.indices.push_back(i);
    std::reverse(seq.indices.begin(), seq.indices.end());
    return seq;
}

// Colors the root edge if some free fan vertex shares a missing color with the center.
bool try_common_color(PartialColoring& coloring, const Multifan& fan, const FreeFan& free) {
    const ColorSet& at_center = coloring.missing(fan.center);
    for (int idx : free.members) {
        const Color common = at_center.first_common(coloring.missing(fan.vertices[idx]));
        if (common == kNoColor) continue;
        if (idx != 0) {
            const LinearSequence seq = free_sequence_to(free, idx);
            shift(coloring, fan, seq, static_cast<int>(seq.indices.size()) - 1);
        }
        coloring.assign(fan.edges[idx], common);
        return true;
    }
    return false;
}

bool common_color_available(const PartialColoring& coloring, EdgeId root, VertexId center) {
    const Multifan fan = build_maximal_multifan(coloring, root, center);
    const FreeFan free = free_part(coloring, fan);
    for (int idx : free.members)
        if (coloring.missing(center).intersects(coloring.missing(fan.vertices[idx]))) return true;
    return false;
}

std::vector<VertexId> distinct_vertices(const Multifan& fan, const FreeFan& free) {
    std::vector<VertexId> out;
    for (int idx : free.members)
        if (std::find(out.begin(), out.end(), fan.vertices[idx]) == out.end()) out.push_back(fan.vertices[idx]);
    return out;
}

enum class FixOutcome { Colored, Stuck };

FixOutcome fix_edge(PartialColoring& coloring, EdgeId root, int m, bool guaranteed, ExtensionStats& stats) {
    const MultiGraph& g = coloring.graph();
    const VertexId u = g.endpoints(root).first;
    const int cap = g.edge_count() + 1;
    for (int round = 1; round <= cap; ++round) {
        stats.max_rounds = std::max(stats.max_rounds, round);
        const Multifan fan = build_maximal_multifan(coloring, root, u);
        const FreeFan free = free_part(coloring, fan);
        if (try_common_color(coloring, fan, free)) {
            ++stats.fan_shifts;
            return FixOutcome::Colored;
        }
        const std::vector<VertexId> fan_vertices = distinct_vertices(fan, free);

        // A color missing at 4m free fan vertices: some (alpha, gamma)-chain at u
        // or at one of those vertices avoids the frozen edges.
        bool switched = false;
        const Color alpha = coloring.missing(u).first();
        for (Color gamma = 1; gamma <= coloring.palette() && !switched && alpha != kNoColor; ++gamma) {
            std::vector<VertexId> ys;
            for (VertexId w : fan_vertices)
                if (coloring.misses(w, gamma)) ys.push_back(w);
            if (static_cast<int>(ys.size()) < 4 * m) continue;
            ys.resize(static_cast<std::size_t>(4 * m));
            std::vector<VertexId> starts = ys;
            starts.push_back(u);
            std::sort(starts.begin(), starts.end());
            for (VertexId s : starts) {
                const KempeChain chain = kempe_chain(coloring, s, alpha, gamma);
                if (chain_has_frozen(coloring, chain)) continue;
                kempe_switch(coloring, chain);
                ++stats.chain_switches;
                switched = true;
                break;
            }
            if (!switched && guaranteed) throw ColoringError("every candidate chain holds a frozen edge");
        }
        if (switched) continue;
        if (guaranteed) throw ColoringError("multifan routine found neither a shift nor a chain");

        // Below the guaranteed palette: probe chains that open a common color.
        std::vector<VertexId> probe_starts = fan_vertices;
        probe_starts.insert(probe_starts.begin(), u);
        int tries = 0;
        for (VertexId s : probe_starts) {
            for (Color a : coloring.missing(u).members()) {
                for (VertexId w : fan_vertices) {
                    for (Color c : coloring.missing(w).members()) {
                        if (a == c) continue;
                        if (++tries > 400) return FixOutcome::Stuck;
                        const KempeChain chain = kempe_chain(coloring, s, a, c);
                        if (chain.edges.empty() || chain_has_frozen(coloring, chain)) continue;
                        kempe_switch(coloring, chain);
                        if (coloring.colored(root) || common_color_available(coloring, root, u)) {
                            ++stats.probe_switches;
                            switched = true;
                            break;
                        }
                        kempe_switch(coloring, chain);
                    }
                    if (switched) break;
                }
                if (switched) break;
            }
            if (switched) break;
        }
        if (!switched) return FixOutcome::Stuck;
    }
    if (guaranteed) throw ColoringError("multifan routine exceeded its round cap");
    return FixOutcome::Stuck;
}

struct QShape {
    int max_degree = 0;
    int max_multiplicity = 0;
};

QShape prepare(const MultiGraph& graph, const std::vector<EdgeId>& q_edges, const std::vector<Color>& phi0,
               PartialColoring& coloring) {
    if (q_edges.size() != phi0.size()) throw ColoringError("precoloring size does not match the edge set");
    QShape shape;
    std::vector<int> degree(static_cast<std::size_t>(graph.vertex_count()), 0);
    std::vector<int> uses(static_cast<std::size_t>(coloring.palette() + 1), 0);
    for (std::size_t i = 0; i < q_edges.size(); ++i) {
        const EdgeId e = q_edges[i];
        if (e < 0 || e >= graph.edge_count()) throw ColoringError("precolored edge id out of range");
        coloring.assign(e, phi0[i]);
        coloring.freeze(e);
        const auto [u, v] = graph.endpoints(e);
        shape.max_degree = std::max({shape.max_degree, ++degree[u], ++degree[v]});
        shape.max_multiplicity = std::max(shape.max_multiplicity, ++uses[phi0[i]]);
    }
    return shape;
}

bool run_extension(PartialColoring& coloring, int m, bool guaranteed, ExtensionStats& stats) {
    const MultiGraph& g = coloring.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (coloring.colored(e)) continue;
        const auto [u, v] = g.endpoints(e);
        const Color c = coloring.missing(u).first_common(coloring.missing(v));
        if (c == kNoColor) continue;
        coloring.assign(e, c);
        ++stats.greedy_colored;
    }
    bool all = true;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (coloring.colored(e)) continue;
        if (fix_edge(coloring, e, std::max(m, 1), guaranteed, stats) == FixOutcome::Stuck) all = false;
    }
    return all;
}

}  // namespace

Extension extend_precoloring(const MultiGraph& graph, const std::vector<EdgeId>& q_edges,
                             const std::vector<Color>& phi0, int c, int m, int k) {
    if (c < 1 || m < 1 || k < 1) throw ColoringError("extension parameters c, m, k must be at least 1");
    const int palette = std::max(k, graph.max_degree() + 4 * c * m - 1);
    Extension out{PartialColoring(graph, palette), palette, {}};
    const QShape shape = prepare(graph, q_edges, phi0, out.coloring);
    if (shape.max_degree > c) throw ColoringError("precolored subgraph has degree above c");
    if (shape.max_multiplicity > m) throw ColoringError("a precolor is used on more than m edges");
    out.stats.guaranteed = true;
    if (!run_extension(out.coloring, m, true, out.stats)) throw ColoringError("extension left an edge uncolored");
    return out;
}

std::optional<Extension> try_extend(const MultiGraph& graph, const std::vector<EdgeId>& q_edges,
                                    const std::vector<Color>& phi0, int palette, std::uint64_t seed,
                                    long long walk_budget) {
    Extension out{PartialColoring(graph, palette), palette, {}};
    const QShape shape = prepare(graph, q_edges, phi0, out.coloring);
    const int c = std::max(shape.max_degree, 1);
    const int m = std::max(shape.max_multiplicity, 1);
    out.stats.guaranteed = palette >= graph.max_degree() + 4 * c * m - 1;
    if (run_extension(out.coloring, m, out.stats.guaranteed, out.stats)) return out;
    long long steps = 0;
    const bool done = complete_coloring(out.coloring, seed, walk_budget, &steps);
    out.stats.walk_steps = steps;
    if (!done) return std::nullopt;
    return out;
}

}  // namespace vdcolor
