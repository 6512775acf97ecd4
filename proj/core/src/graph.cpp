#include "vdcolor/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <tuple>

#include "vdcolor/rng.hpp"

namespace vdcolor {

MultiGraph::MultiGraph(int n) {
    if (n < 0) throw GraphError("negative vertex count");
    incidence_.resize(static_cast<std::size_t>(n));
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
    const int n = vertex_count();
    if (u < 0 || v < 0 || u >= n || v >= n) {
        throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") references a vertex outside [0," + std::to_string(n) + ")");
    }
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
    const EdgeId id = edge_count();
    edges_.emplace_back(u, v);
    incidence_[u].push_back({id, v});
    incidence_[v].push_back({id, u});
    return id;
}

int MultiGraph::max_degree() const {
    int best = 0;
    for (const auto& inc : incidence_) best = std::max(best, static_cast<int>(inc.size()));
    return best;
}

int MultiGraph::min_degree() const {
    if (incidence_.empty()) return 0;
    int best = degree(0);
    for (const auto& inc : incidence_) best = std::min(best, static_cast<int>(inc.size()));
    return best;
}

int MultiGraph::multiplicity(VertexId u, VertexId v) const {
    const auto& inc = incidence_[u].size() <= incidence_[v].size() ? incidence_[u] : incidence_[v];
    const VertexId target = incidence_[u].size() <= incidence_[v].size() ? v : u;
    int count = 0;
    for (const auto& i : inc) count += i.neighbor == target;
    return count;
}

bool MultiGraph::is_simple() const {
    std::vector<int> seen(incidence_.size(), -1);
    for (VertexId v = 0; v < vertex_count(); ++v) {
        for (const auto& i : incidence_[v]) {
            if (seen[i.neighbor] == v) return false;
            seen[i.neighbor] = v;
        }
    }
    return true;
}

EdgeSubgraph edge_subgraph(const MultiGraph& parent, const std::vector<bool>& keep) {
    EdgeSubgraph sub{MultiGraph(parent.vertex_count()), {}, {}};
    sub.local_edge.assign(static_cast<std::size_t>(parent.edge_count()), -1);
    for (EdgeId e = 0; e < parent.edge_count(); ++e) {
        if (!keep[e]) continue;
        const auto [u, v] = parent.endpoints(e);
        sub.local_edge[e] = sub.graph.add_edge(u, v);
        sub.parent_edge.push_back(e);
    }
    return sub;
}

MultiGraph complete_graph(int n) {
    if (n < 1) throw GraphError("complete_graph requires n >= 1");
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

MultiGraph cycle_graph(int n) {
    if (n < 3) throw GraphError("cycle_graph requires n >= 3");
    MultiGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

MultiGraph complete_bipartite(int left, int right) {
    MultiGraph g(left + right);
    for (int a = 0; a < left; ++a)
        for (int b = 0; b < right; ++b) g.add_edge(a, left + b);
    return g;
}

namespace {

// One attempt of the pairing model, pairing points one at a time and rejecting
// pairs that would create a loop or a repeated edge. Returns false when the
// remaining points admit no valid pair.
bool pairing_attempt(int n, int d, Rng& rng, std::vector<std::pair<int, int>>& out) {
    out.clear();
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) points.push_back(v);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));

    while (!points.empty()) {
        const std::size_t size = points.size();
        bool placed = false;
        for (int tries = 0; tries < 64 && !placed; ++tries) {
            std::size_t i = rng.below(size);
            std::size_t j = rng.below(size - 1);
            if (j >= i) ++j;
            const int u = points[i], v = points[j];
            if (u == v || adj[u][v]) continue;
            adj[u][v] = adj[v][u] = 1;
            out.emplace_back(std::min(u, v), std::max(u, v));
            if (i < j) std::swap(i, j);
            points[i] = points.back();
            points.pop_back();
            points[j] = points.back();
            points.pop_back();
            placed = true;
        }
        if (placed) continue;
        // Random probing failed: enumerate the valid pairs and draw one.
        std::vector<std::pair<std::size_t, std::size_t>> valid;
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j)
                if (points[i] != points[j] && !adj[points[i]][points[j]]) valid.emplace_back(i, j);
        if (valid.empty()) return false;
        auto [i, j] = valid[rng.below(valid.size())];
        const int u = points[i], v = points[j];
        adj[u][v] = adj[v][u] = 1;
        out.emplace_back(std::min(u, v), std::max(u, v));
        points[j] = points.back();
        points.pop_back();
        points[i] = points.back();
        points.pop_back();
    }
    return true;
}

}  // namespace

MultiGraph random_regular(int n, int d, std::uint64_t seed, int max_retries) {
    if (n < 1) throw GraphError("random_regular requires n >= 1");
    if (d < 0 || d >= n) throw GraphError("random_regular requires 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw GraphError("n*d must be even");

    const bool use_complement = d > (n - 1) / 2;
    const int target = use_complement ? n - 1 - d : d;
    Rng rng(seed);
    std::vector<std::pair<int, int>> pairs;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        if (!pairing_attempt(n, target, rng, pairs)) continue;
        std::sort(pairs.begin(), pairs.end());
        MultiGraph sparse(n);
        for (auto [u, v] : pairs) sparse.add_edge(u, v);
        return use_complement ? complement(sparse) : sparse;
    }
    throw GraphError("random_regular: pairing model failed after " + std::to_string(max_retries) +
                     " retries");
}

MultiGraph union_with(const MultiGraph& base,
                      const std::vector<std::pair<VertexId, VertexId>>& extra_edges) {
    MultiGraph g(base.vertex_count());
    for (auto [u, v] : base.edges()) g.add_edge(u, v);
    for (auto [u, v] : extra_edges) g.add_edge(u, v);
    return g;
}

MultiGraph complement(const MultiGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    MultiGraph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!adj[u][v]) out.add_edge(u, v);
    return out;
}

namespace {

bool parse_int(std::string_view token, long long& out) {
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

MultiGraph read_graph(std::string_view text) {
    std::vector<std::vector<std::string_view>> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto tokens = split_ws(text.substr(start, end - start));
        if (!tokens.empty()) lines.push_back(std::move(tokens));
        start = end + 1;
    }
    if (lines.empty()) throw GraphError("empty graph text");
    long long n = 0, m = 0;
    if (lines[0].size() != 2 || !parse_int(lines[0][0], n) || !parse_int(lines[0][1], m) || n < 0 ||
        m < 0) {
        throw GraphError("malformed header, expected \"n m\"");
    }
    if (static_cast<long long>(lines.size()) - 1 != m) {
        throw GraphError("header announces " + std::to_string(m) + " edges but " +
                         std::to_string(lines.size() - 1) + " edge lines follow");
    }
    MultiGraph g(static_cast<int>(n));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        long long u = 0, v = 0;
        if (lines[i].size() != 2 || !parse_int(lines[i][0], u) || !parse_int(lines[i][1], v)) {
            throw GraphError("malformed edge line " + std::to_string(i + 1));
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw GraphError("edge line " + std::to_string(i + 1) + ": vertex out of range");
        }
        if (u == v) throw GraphError("edge line " + std::to_string(i + 1) + ": loop");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

std::string write_graph(const MultiGraph& g) {
    std::vector<std::tuple<int, int, int>> order;
    order.reserve(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.endpoints(e);
        order.emplace_back(std::min(u, v), std::max(u, v), e);
    }
    std::sort(order.begin(), order.end());
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v, e] : order) out << u << ' ' << v << '\n';
    return out.str();
}

}  // namespace vdcolor
