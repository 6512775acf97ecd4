#include "vdcolor/design.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "vdcolor/rng.hpp"

namespace vdcolor {

std::vector<Block> bibd_blocks(int j) {
    if (j < 1) throw DesignError("block family index must be at least 1");
    const Color b = 9 * j;
    return {
        Block{b - 8, b - 7, b - 6}, Block{b - 5, b - 4, b - 3}, Block{b - 2, b - 1, b},
        Block{b - 8, b - 5, b - 2}, Block{b - 7, b - 4, b - 1}, Block{b - 6, b - 3, b},
        Block{b - 8, b - 4, b},     Block{b - 7, b - 3, b - 2}, Block{b - 6, b - 5, b - 1},
        Block{b - 8, b - 3, b - 1}, Block{b - 7, b - 5, b},     Block{b - 6, b - 4, b - 2},
    };
}

std::vector<std::pair<VertexId, VertexId>> CycleCover::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& cycle : cycles)
        for (std::size_t i = 0; i < cycle.size(); ++i) out.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
    return out;
}

CycleCover build_Q_vd(int n) {
    if (n < 6) throw DesignError("cycle cover needs at least 6 vertices");
    CycleCover cover;
    cover.n = n;
    cover.q = n / 3;
    cover.r = n % 3;
    VertexId next = 0;
    for (int i = 0; i < cover.triangle_count(); ++i, next += 3) cover.cycles.push_back({next, next + 1, next + 2});
    if (cover.r != 0) {
        std::vector<VertexId> rest;
        for (; next < n; ++next) rest.push_back(next);
        cover.cycles.push_back(rest);
    }
    return cover;
}

int block_offset(int n) {
    int c = 10;
    while ((n / 4 + c) % 3 != 0) ++c;
    return c;
}

namespace {

using ColorPair = std::pair<Color, Color>;

ColorPair ordered(Color a, Color b) { return {std::min(a, b), std::max(a, b)}; }

// Distinct colors for a cycle of the given length such that no vertex color
// pair repeats a forbidden pair and no color exceeds four uses overall.
bool search_cycle_colors(int length, int palette, const std::set<ColorPair>& forbidden, std::vector<int>& uses,
                         std::vector<Color>& chosen) {
    if (static_cast<int>(chosen.size()) == length) {
        return !forbidden.count(ordered(chosen.back(), chosen.front()));
    }
    for (Color c = 1; c <= palette; ++c) {
        if (uses[c] >= 4 || std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
        if (!chosen.empty() && forbidden.count(ordered(chosen.back(), c))) continue;
        chosen.push_back(c);
        ++uses[c];
        if (search_cycle_colors(length, palette, forbidden, uses, chosen)) return true;
        --uses[c];
        chosen.pop_back();
    }
    return false;
}

}  // namespace

PrecolorPlan precolor_vd(const CycleCover& cover, int d, bool allow_compact) {
    PrecolorPlan plan;
    plan.mode = Mode::Vd;
    plan.n = cover.n;
    plan.q = cover.q;
    plan.r = cover.r;
    plan.d = d;
    const int palette = d + 2;
    const int triangles = cover.triangle_count();
    const int t = (cover.n / 4 + block_offset(cover.n)) / 3;
    const int families = t / 3;
    if (12 * families < triangles) throw DesignError("not enough design blocks for the triangles of Q");

    std::vector<Block> blocks;
    for (int j = 1; static_cast<int>(blocks.size()) < triangles; ++j)
        for (const Block& b : bibd_blocks(j)) blocks.push_back(b);
    blocks.resize(static_cast<std::size_t>(triangles));

    std::vector<int> uses(static_cast<std::size_t>(std::max(palette, 9 * families) + 1), 0);
    std::set<ColorPair> covered;
    for (int i = 0; i < triangles; ++i) {
        const Block& b = blocks[i];
        for (Color c : b) {
            if (c > palette) throw DesignError("palette exhausted: block color " + std::to_string(c) + " exceeds d+2");
            ++uses[c];
        }
        const auto& cyc = cover.cycles[i];
        for (int e = 0; e < 3; ++e) {
            plan.q_pairs.emplace_back(cyc[e], cyc[(e + 1) % 3]);
            plan.phi0.push_back(b[e]);
        }
        covered.insert(ordered(b[0], b[1]));
        covered.insert(ordered(b[1], b[2]));
        covered.insert(ordered(b[0], b[2]));
    }

    if (cover.r != 0) {
        const auto& cyc = cover.cycles.back();
        const int length = static_cast<int>(cyc.size());
        std::vector<Color> fresh;
        for (Color c = 1; c <= palette && static_cast<int>(fresh.size()) < length; ++c)
            if (uses[c] == 0) fresh.push_back(c);
        if (static_cast<int>(fresh.size()) < length) {
            if (!allow_compact) {
                throw DesignError("palette exhausted: " + std::to_string(length) +
                                  " fresh colors needed for the remainder cycle");
            }
            fresh.clear();
            if (!search_cycle_colors(length, palette, covered, uses, fresh)) {
                throw DesignError("palette exhausted: no admissible remainder cycle coloring");
            }
            plan.compact_remainder = true;
        }
        // Vertex cyc[i] sees fresh[i-1] and fresh[i] (cyclically).
        for (int e = 0; e < length; ++e) {
            plan.q_pairs.emplace_back(cyc[e], cyc[(e + 1) % length]);
            plan.phi0.push_back(fresh[(e + 1) % length]);
        }
    }

    std::set<Color> used(plan.phi0.begin(), plan.phi0.end());
    plan.c1.assign(used.begin(), used.end());
    return plan;
}

std::vector<int> equitable_vertex_coloring(const MultiGraph& graph, int classes, std::uint64_t seed) {
    const int n = graph.vertex_count();
    if (classes < 1) throw DesignError("equitable coloring needs at least one class");
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [a, b] : graph.edges()) adj[a][b] = adj[b][a] = 1;

    Rng rng(seed);
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    rng.shuffle(order);
    std::vector<int> cls(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cls[order[i]] = i % classes;

    auto same_class_neighbors = [&](VertexId v, int c, VertexId skip) {
        int count = 0;
        for (const auto& inc : graph.incident(v))
            if (inc.neighbor != skip && cls[inc.neighbor] == c) ++count;
        return count;
    };
    const long long budget = 2000LL * (n + 1) * classes;
    for (long long step = 0; step < budget; ++step) {
        std::vector<VertexId> bad;
        for (VertexId v = 0; v < n; ++v)
            if (same_class_neighbors(v, cls[v], -1) > 0) bad.push_back(v);
        if (bad.empty()) {
            for (auto [a, b] : graph.edges())
                if (cls[a] == cls[b]) throw DesignError("equitable coloring certificate failed");
            return cls;
        }
        const VertexId x = bad[rng.below(bad.size())];
        const int old_x = same_class_neighbors(x, cls[x], -1);
        int best = 1 << 30;
        std::vector<VertexId> choices;
        for (VertexId y = 0; y < n; ++y) {
            if (cls[y] == cls[x]) continue;
            const int delta = same_class_neighbors(x, cls[y], y) + same_class_neighbors(y, cls[x], x) - old_x -
                              same_class_neighbors(y, cls[y], -1);
            if (delta < best) {
                best = delta;
                choices.assign(1, y);
            } else if (delta == best) {
                choices.push_back(y);
            }
        }
        if (choices.empty()) break;
        VertexId y = choices[rng.below(choices.size())];
        if (best > 0 && rng.below(10) != 0) continue;
        if (best > 0) {
            do {
                y = rng.index(static_cast<std::size_t>(n));
            } while (cls[y] == cls[x]);
        }
        std::swap(cls[x], cls[y]);
    }
    throw DesignError("no equitable " + std::to_string(classes) + "-coloring found within budget");
}

namespace {

EdgeId find_edge(const MultiGraph& g, VertexId a, VertexId b) {
    for (const auto& inc : g.incident(a))
        if (inc.neighbor == b) return inc.edge;
    throw DesignError("expected edge " + std::to_string(a) + "-" + std::to_string(b) + " is missing");
}

}  // namespace

PrecolorPlan build_Q_sd(const MultiGraph& graph, int d, std::uint64_t seed) {
    const int n = graph.vertex_count();
    if (n < 6 || n % 2 != 0) throw DesignError("star forest construction needs an even n >= 6");
    for (VertexId v = 0; v < n; ++v)
        if (graph.degree(v) != d) throw DesignError("graph is not " + std::to_string(d) + "-regular");
    if (3 * d < 2 * n) throw DesignError("star forest construction needs d >= 2n/3");
    if (!graph.is_simple()) throw DesignError("star forest construction needs a simple graph");

    PrecolorPlan plan;
    plan.mode = Mode::Sd;
    plan.n = n;
    plan.q = n / 3;
    plan.r = n % 3;
    plan.d = d;
    const int q = plan.q;
    const int classes = plan.r == 2 ? q + 1 : q;
    const std::vector<int> cls = equitable_vertex_coloring(complement(graph), classes, seed);
    std::vector<std::vector<VertexId>> groups(static_cast<std::size_t>(classes));
    for (VertexId v = 0; v < n; ++v) groups[cls[v]].push_back(v);
    for (const auto& grp : groups)
        for (std::size_t i = 0; i < grp.size(); ++i)
            for (std::size_t j = i + 1; j < grp.size(); ++j)
                if (!graph.adjacent(grp[i], grp[j])) throw DesignError("equitable class is not a clique in G");

    struct Star {
        VertexId center, first, second;
    };
    std::vector<Star> stars;
    std::vector<VertexId> pair_class;
    std::vector<VertexId> quad;
    for (const auto& grp : groups) {
        if (grp.size() == 3) stars.push_back({grp[2], grp[0], grp[1]});
        else if (grp.size() == 4) quad = grp;
        else if (grp.size() == 2) pair_class = grp;
        else throw DesignError("unexpected equitable class size");
    }

    Star special{-1, -1, -1};
    if (plan.r == 1) {
        special = {quad[3], quad[0], quad[1]};
        plan.y = quad[2];
    } else if (plan.r == 2) {
        std::vector<VertexId> triangle_vertices;
        for (const Star& s : stars) triangle_vertices.insert(triangle_vertices.end(), {s.center, s.first, s.second});
        std::sort(triangle_vertices.begin(), triangle_vertices.end());
        bool found = false;
        for (VertexId p : pair_class) {
            for (VertexId w : triangle_vertices) {
                if (!graph.adjacent(p, w)) continue;
                const auto it = std::find_if(stars.begin(), stars.end(), [&](const Star& s) {
                    return s.center == w || s.first == w || s.second == w;
                });
                std::vector<VertexId> others;
                for (VertexId t : {it->center, it->first, it->second})
                    if (t != w) others.push_back(t);
                std::sort(others.begin(), others.end());
                special = {w, others[0], others[1]};
                plan.y = p;
                plan.z = p == pair_class[0] ? pair_class[1] : pair_class[0];
                stars.erase(it);
                found = true;
                break;
            }
            if (found) break;
        }
        if (!found) throw DesignError("no edge joins the two-vertex class to a triangle");
    }
    std::sort(stars.begin(), stars.end(), [](const Star& a, const Star& b) {
        return std::min({a.center, a.first, a.second}) < std::min({b.center, b.first, b.second});
    });
    if (plan.r != 0) stars.push_back(special);

    for (const Star& s : stars) {
        plan.v.push_back(s.center);
        plan.u.push_back(s.first);
        plan.x.push_back(s.second);
        plan.q_pairs.emplace_back(s.center, s.first);
        plan.q_pairs.emplace_back(s.center, s.second);
    }
    if (plan.r >= 1) plan.q_pairs.emplace_back(plan.v.back(), plan.y);
    if (plan.r == 2) plan.q_pairs.emplace_back(plan.y, plan.z);
    for (auto [a, b] : plan.q_pairs) plan.q_edges.push_back(find_edge(graph, a, b));
    return plan;
}

void precolor_sd(PrecolorPlan& plan) {
    if (plan.mode != Mode::Sd || !plan.labeled()) throw DesignError("precolor_sd needs a labeled star-forest plan");
    const int q = plan.q, r = plan.r;
    if (q < 2) throw DesignError("precolor_sd needs q >= 2");
    const bool odd = q % 2 == 1;
    plan.phi0.clear();
    plan.phi0_prime.clear();
    const Color top = r == 2 ? (odd ? 2 * q + 2 : 2 * q + 4) : (odd ? 2 * q + 2 : 2 * q);
    for (int i = 1; i <= q; ++i) {
        plan.phi0.push_back(2 * i - 1);
        plan.phi0.push_back(2 * i + 1);
        if (r == 2 && i == q) {
            plan.phi0_prime.push_back(2 * q - 1);
            plan.phi0_prime.push_back(2);
        } else {
            plan.phi0_prime.push_back(top);
            plan.phi0_prime.push_back(2);
        }
    }
    if (r == 1) {
        plan.phi0.push_back(1);
        plan.phi0_prime.push_back(1);
    } else if (r == 2) {
        plan.phi0.push_back(odd ? 2 * q - 2 : 2 * q);
        plan.phi0.push_back(2 * q + 1);
        plan.phi0_prime.push_back(2 * q + 1);
        plan.phi0_prime.push_back(top);
    }
    plan.c1.clear();
    for (int i = 0; i <= q; ++i) plan.c1.push_back(2 * i + 1);
    if (r == 2) plan.c1.push_back(odd ? 2 * q - 2 : 2 * q);
    std::sort(plan.c1.begin(), plan.c1.end());
    if (odd) plan.c0 = {2, 2 * q + 2};
    else if (r != 2) plan.c0 = {2, 2 * q};
    else plan.c0 = {2, 2 * q + 4};
    for (Color c : plan.c0)
        if (std::binary_search(plan.c1.begin(), plan.c1.end(), c)) throw DesignError("C0 and C1 intersect");
}

PartialColoring recolor_sd(const PartialColoring& coloring, const PrecolorPlan& plan) {
    const MultiGraph& g = coloring.graph();
    if (plan.phi0_prime.size() != plan.q_edges.size()) throw DesignError("plan has no sum recoloring");
    if (!coloring.is_total()) throw ColoringError("recolor_sd needs a total coloring");
    if (coloring.palette() < plan.d + 2) throw ColoringError("recolor_sd needs the palette [1, d+2]");
    std::vector<char> in_q(static_cast<std::size_t>(g.edge_count()), 0);
    for (std::size_t i = 0; i < plan.q_edges.size(); ++i) {
        if (coloring.color(plan.q_edges[i]) != plan.phi0[i]) {
            throw ColoringError("coloring does not extend the precoloring on edge " +
                                std::to_string(plan.q_edges[i]));
        }
        in_q[plan.q_edges[i]] = 1;
    }
    PartialColoring out(g, plan.d + 2);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!in_q[e]) out.assign(e, coloring.color(e));
    for (std::size_t i = 0; i < plan.q_edges.size(); ++i) out.assign(plan.q_edges[i], plan.phi0_prime[i]);
    return out;
}

std::vector<long long> ExpectedSums::all() const {
    std::vector<long long> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
        out.push_back(u[i]);
        out.push_back(x[i]);
    }
    if (has_y) out.push_back(y);
    if (has_z) out.push_back(z);
    return out;
}

ExpectedSums expected_sums(int q, int r, long long s) {
    ExpectedSums out;
    out.unlabeled = s;
    const bool odd = q % 2 == 1;
    const int plain = r == 2 ? q - 1 : q;
    // Offsets of v_i and u_i grow with the color that replaces 2i-1.
    const long long lift = r == 2 ? (odd ? 2 * q + 2 : 2 * q + 4) : (odd ? 2 * q + 2 : 2 * q);
    for (int i = 1; i <= plain; ++i) {
        out.v.push_back(s + lift + 2 - 4LL * i);
        out.u.push_back(s + lift + 1 - 2LL * i);
        out.x.push_back(s + 1 - 2LL * i);
    }
    if (r == 1) {
        out.has_y = true;
        out.y = s;
    } else if (r == 2) {
        out.v.push_back(odd ? s + 4 - 2LL * q : s + 2 - 2LL * q);
        out.u.push_back(s);
        out.x.push_back(s + 1 - 2LL * q);
        out.has_y = out.has_z = true;
        out.y = s + 4;
        out.z = odd ? s + 1 : s + 3;
    }
    return out;
}

long long palette_sum(int d, const std::vector<Color>& c0) {
    long long s = 0;
    for (Color c = 1; c <= d + 2; ++c)
        if (std::find(c0.begin(), c0.end(), c) == c0.end()) s += c;
    return s;
}

std::vector<long long> expected_vertex_sums(const PrecolorPlan& plan) {
    if (!plan.labeled()) throw DesignError("expected sums need a labeled plan");
    const ExpectedSums sums = expected_sums(plan.q, plan.r, palette_sum(plan.d, plan.c0));
    std::vector<long long> out(static_cast<std::size_t>(plan.n), sums.unlabeled);
    for (int i = 0; i < plan.q; ++i) {
        out[plan.v[i]] = sums.v[i];
        out[plan.u[i]] = sums.u[i];
        out[plan.x[i]] = sums.x[i];
    }
    if (sums.has_y) out[plan.y] = sums.y;
    if (sums.has_z) out[plan.z] = sums.z;
    return out;
}

}  // namespace vdcolor
