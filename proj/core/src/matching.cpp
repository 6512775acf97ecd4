#include "vdcolor/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace vdcolor {

namespace {

struct BipartiteIndex {
    std::vector<int> left_pos;   // vertex -> index in left or -1
    std::vector<int> right_pos;  // vertex -> index in right or -1
    std::vector<std::vector<std::pair<int, EdgeId>>> adj;  // left index -> (right index, edge)
};

BipartiteIndex index_sides(const MultiGraph& graph, const std::vector<VertexId>& left,
                           const std::vector<VertexId>& right) {
    const int n = graph.vertex_count();
    BipartiteIndex idx;
    idx.left_pos.assign(static_cast<std::size_t>(n), -1);
    idx.right_pos.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (idx.left_pos[left[i]] >= 0) throw GraphError("duplicate vertex on the left side");
        idx.left_pos[left[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < right.size(); ++i) {
        if (idx.right_pos[right[i]] >= 0 || idx.left_pos[right[i]] >= 0) {
            throw GraphError("sides of the bipartition overlap");
        }
        idx.right_pos[right[i]] = static_cast<int>(i);
    }
    idx.adj.resize(left.size());
    for (std::size_t i = 0; i < left.size(); ++i)
        for (const auto& inc : graph.incident(left[i]))
            if (idx.right_pos[inc.neighbor] >= 0) idx.adj[i].emplace_back(idx.right_pos[inc.neighbor], inc.edge);
    return idx;
}

}  // namespace

HallResult hall_matching(const MultiGraph& graph, const std::vector<VertexId>& left,
                         const std::vector<VertexId>& right) {
    if (left.size() != right.size()) throw GraphError("hall_matching needs sides of equal size");
    const BipartiteIndex idx = index_sides(graph, left, right);
    const int L = static_cast<int>(left.size());
    const int R = static_cast<int>(right.size());
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> match_l(L, -1), match_r(R, -1);
    std::vector<EdgeId> via_l(L, -1);
    std::vector<int> dist(L);

    auto bfs = [&]() {
        std::queue<int> q;
        bool found = false;
        for (int i = 0; i < L; ++i) {
            dist[i] = match_l[i] < 0 ? 0 : kInf;
            if (match_l[i] < 0) q.push(i);
        }
        while (!q.empty()) {
            const int a = q.front();
            q.pop();
            for (auto [b, e] : idx.adj[a]) {
                const int next = match_r[b];
                if (next < 0) found = true;
                else if (dist[next] == kInf) {
                    dist[next] = dist[a] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    };
    std::vector<std::size_t> cursor(L);
    auto dfs = [&](auto&& self, int a) -> bool {
        for (; cursor[a] < idx.adj[a].size(); ++cursor[a]) {
            auto [b, e] = idx.adj[a][cursor[a]];
            const int next = match_r[b];
            if (next < 0 || (dist[next] == dist[a] + 1 && self(self, next))) {
                match_l[a] = b;
                match_r[b] = a;
                via_l[a] = e;
                ++cursor[a];
                return true;
            }
        }
        dist[a] = kInf;
        return false;
    };
    while (bfs()) {
        std::fill(cursor.begin(), cursor.end(), 0);
        for (int i = 0; i < L; ++i)
            if (match_l[i] < 0) dfs(dfs, i);
    }

    HallResult result;
    for (int i = 0; i < L; ++i)
        if (match_l[i] >= 0) result.matching.push_back(via_l[i]);
    std::sort(result.matching.begin(), result.matching.end());
    result.perfect = static_cast<int>(result.matching.size()) == L;
    if (result.perfect) return result;

    // Left vertices reachable from unmatched left vertices by alternating paths.
    std::vector<char> seen_l(L, 0), seen_r(R, 0);
    std::queue<int> q;
    for (int i = 0; i < L; ++i)
        if (match_l[i] < 0) {
            seen_l[i] = 1;
            q.push(i);
        }
    while (!q.empty()) {
        const int a = q.front();
        q.pop();
        for (auto [b, e] : idx.adj[a]) {
            if (seen_r[b]) continue;
            seen_r[b] = 1;
            const int next = match_r[b];
            if (next >= 0 && !seen_l[next]) {
                seen_l[next] = 1;
                q.push(next);
            }
        }
    }
    for (int i = 0; i < L; ++i)
        if (seen_l[i]) result.violator.push_back(left[i]);
    std::sort(result.violator.begin(), result.violator.end());
    return result;
}

std::vector<VertexId> side_neighborhood(const MultiGraph& graph, const std::vector<VertexId>& subset,
                                        const std::vector<VertexId>& right) {
    std::vector<char> in_right(static_cast<std::size_t>(graph.vertex_count()), 0);
    for (VertexId v : right) in_right[v] = 1;
    std::vector<VertexId> out;
    for (VertexId v : subset)
        for (const auto& inc : graph.incident(v))
            if (in_right[inc.neighbor]) out.push_back(inc.neighbor);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<EdgeId> maximum_matching(const MultiGraph& graph, const std::vector<char>& allowed,
                                     const std::vector<EdgeId>& initial) {
    const int n = graph.vertex_count();
    std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(n));
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        if (!allowed[e]) continue;
        const auto [a, b] = graph.endpoints(e);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> match(static_cast<std::size_t>(n), -1);
    std::vector<EdgeId> chosen(static_cast<std::size_t>(n), -1);
    for (EdgeId e : initial) {
        const auto [a, b] = graph.endpoints(e);
        if (!allowed[e] || match[a] >= 0 || match[b] >= 0) throw GraphError("initial edges are not an allowed matching");
        match[a] = b;
        match[b] = a;
        chosen[a] = chosen[b] = e;
    }

    std::vector<int> parent(static_cast<std::size_t>(n)), base(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(n)), blossom(static_cast<std::size_t>(n));
    auto lca = [&](int a, int b) {
        std::vector<char> mark(static_cast<std::size_t>(n), 0);
        while (true) {
            a = base[a];
            mark[a] = 1;
            if (match[a] < 0) break;
            a = parent[match[a]];
        }
        while (true) {
            b = base[b];
            if (mark[b]) return b;
            b = parent[match[b]];
        }
    };
    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    };
    auto find_path = [&](int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] >= 0 && parent[match[to]] >= 0)) {
                    const int cur = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n; ++i) {
                        if (!blossom[base[i]]) continue;
                        base[i] = cur;
                        if (!used[i]) {
                            used[i] = 1;
                            q.push(i);
                        }
                    }
                } else if (parent[to] < 0) {
                    parent[to] = v;
                    if (match[to] < 0) return to;
                    used[match[to]] = 1;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    };
    for (int root = 0; root < n; ++root) {
        if (match[root] >= 0 || adj[root].empty()) continue;
        int v = find_path(root);
        while (v >= 0) {
            const int pv = parent[v];
            const int next = match[pv];
            match[v] = pv;
            match[pv] = v;
            chosen[v] = chosen[pv] = -1;
            v = next;
        }
    }

    std::vector<EdgeId> out;
    for (VertexId a = 0; a < n; ++a) {
        const VertexId b = match[a];
        if (b < a) continue;
        EdgeId e = chosen[a];
        if (e < 0 || chosen[b] != e) {
            e = -1;
            for (const auto& inc : graph.incident(a))
                if (inc.neighbor == b && allowed[inc.edge] && (e < 0 || inc.edge < e)) e = inc.edge;
        }
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> bipartition(const MultiGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    for (VertexId s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::queue<VertexId> q;
        q.push(s);
        while (!q.empty()) {
            const VertexId v = q.front();
            q.pop();
            for (const auto& inc : graph.incident(v)) {
                if (side[inc.neighbor] < 0) {
                    side[inc.neighbor] = 1 - side[v];
                    q.push(inc.neighbor);
                } else if (side[inc.neighbor] == side[v]) {
                    throw ColoringError("graph is not bipartite: odd cycle through edge " + std::to_string(inc.edge));
                }
            }
        }
    }
    return side;
}

PartialColoring konig_color(const MultiGraph& graph) {
    const std::vector<int> side = bipartition(graph);
    const int delta = graph.max_degree();
    PartialColoring coloring(graph, delta);
    if (graph.edge_count() == 0) return coloring;

    if (graph.is_regular()) {
        std::vector<VertexId> left, right;
        for (VertexId v = 0; v < graph.vertex_count(); ++v) (side[v] == 0 ? left : right).push_back(v);
        std::vector<bool> keep(static_cast<std::size_t>(graph.edge_count()), true);
        for (Color c = 1; c <= delta; ++c) {
            const EdgeSubgraph rest = edge_subgraph(graph, keep);
            const HallResult pm = hall_matching(rest.graph, left, right);
            if (!pm.perfect) throw ColoringError("regular bipartite graph without a perfect matching");
            for (EdgeId local : pm.matching) {
                const EdgeId e = rest.parent_edge[local];
                coloring.assign(e, c);
                keep[e] = false;
            }
        }
        return coloring;
    }

    // Alternating-path coloring: in a bipartite graph the (a,b)-chain from v never reaches u.
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const auto [u, v] = graph.endpoints(e);
        const Color a = coloring.missing(u).first();
        const Color b = coloring.missing(v).first();
        if (!coloring.misses(v, a)) kempe_switch(coloring, kempe_chain(coloring, v, a, b));
        coloring.assign(e, a);
    }
    return coloring;
}

}  // namespace vdcolor
