#include "vdcolor/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace vdcolor {

namespace {

// C(k, r), saturating at `cap`.
long long binom_capped(int k, int r, long long cap) {
    if (r < 0 || r > k) return 0;
    r = std::min(r, k - r);
    long long out = 1;
    for (int i = 1; i <= r; ++i) {
        out = out * (k - r + i) / i;
        if (out >= cap) return cap;
    }
    return out;
}

void check_domain(const MultiGraph& g) {
    int isolated = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        isolated += g.degree(v) == 0;
        if (g.degree(v) == 1) {
            const VertexId w = g.incident(v)[0].neighbor;
            if (g.degree(w) == 1) throw OracleError("isolated edge at vertex " + std::to_string(v));
        }
    }
    if (isolated > 1) throw OracleError("more than one isolated vertex");
    if (g.edge_count() > 62) throw OracleError("too many edges for the exhaustive oracle");
}

class Search {
public:
    Search(const MultiGraph& g, Distinction kind, int k, long long budget)
        : g_(g), kind_(kind), k_(k), budget_(budget) {
        const int n = g.vertex_count();
        mask_.assign(static_cast<std::size_t>(n), 0);
        sum_.assign(static_cast<std::size_t>(n), 0);
        left_.resize(static_cast<std::size_t>(n));
        for (VertexId v = 0; v < n; ++v) left_[v] = g.degree(v);
        color_.assign(static_cast<std::size_t>(g.edge_count()), kNoColor);
        order_edges();
        for (VertexId v = 0; v < n; ++v)
            if (left_[v] == 0) saturated_.push_back(v);
    }

    // 1: found, 0: refuted, -1: budget exhausted.
    int run(long long& nodes) {
        const int result = dfs(0);
        nodes = nodes_;
        return result;
    }
    const std::vector<Color>& colors() const { return color_; }

private:
    // Vertex order: a maximum-degree vertex first, then by repeatedly taking
    // the vertex with most edges into the placed set. The root's edges come
    // first, the rest follow the order of their later endpoint.
    void order_edges() {
        const int n = g_.vertex_count();
        std::vector<int> pos(static_cast<std::size_t>(n), -1), links(static_cast<std::size_t>(n), 0);
        std::vector<VertexId> placed;
        for (int step = 0; step < n; ++step) {
            VertexId best = -1;
            for (VertexId v = 0; v < n; ++v) {
                if (pos[v] >= 0) continue;
                if (best < 0 || links[v] > links[best] || (links[v] == links[best] && g_.degree(v) > g_.degree(best)))
                    best = v;
            }
            pos[best] = step;
            placed.push_back(best);
            for (const auto& inc : g_.incident(best)) ++links[inc.neighbor];
        }
        root_ = placed.empty() ? -1 : placed[0];
        std::vector<std::pair<std::pair<int, int>, EdgeId>> keyed;
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            const auto [u, v] = g_.endpoints(e);
            if (u == root_ || v == root_) keyed.push_back({{-1, std::max(pos[u], pos[v])}, e});
            else keyed.push_back({{std::max(pos[u], pos[v]), std::min(pos[u], pos[v])}, e});
        }
        std::sort(keyed.begin(), keyed.end());
        for (const auto& item : keyed) order_.push_back(item.second);
    }

    bool duplicate(VertexId v) const {
        for (VertexId w : saturated_) {
            if (kind_ == Distinction::Vd && mask_[w] == mask_[v]) return true;
            if (kind_ == Distinction::Sd && sum_[w] == sum_[v]) return true;
        }
        return false;
    }

    int dfs(std::size_t depth) {
        if (++nodes_ > budget_) return -1;
        if (depth == order_.size()) return 1;
        const EdgeId e = order_[depth];
        const auto [u, v] = g_.endpoints(e);
        const std::uint64_t busy = mask_[u] | mask_[v];
        Color limit = k_;
        // Colors are interchangeable for proper and vd colorings: the root's
        // i-th edge may take color i.
        if (kind_ != Distinction::Sd && (u == root_ || v == root_) && depth < static_cast<std::size_t>(g_.degree(root_)))
            limit = static_cast<Color>(depth) + 1;
        for (Color c = 1; c <= limit; ++c) {
            const std::uint64_t bit = std::uint64_t{1} << c;
            if (busy & bit) continue;
            color_[e] = c;
            mask_[u] |= bit;
            mask_[v] |= bit;
            sum_[u] += c;
            sum_[v] += c;
            --left_[u];
            --left_[v];
            bool ok = true;
            std::size_t pushed = 0;
            if (kind_ != Distinction::Proper) {
                for (VertexId x : {u, v}) {
                    if (left_[x] != 0) continue;
                    if (duplicate(x)) {
                        ok = false;
                        break;
                    }
                    saturated_.push_back(x);
                    ++pushed;
                }
            }
            int result = ok ? dfs(depth + 1) : 0;
            for (; pushed > 0; --pushed) saturated_.pop_back();
            ++left_[u];
            ++left_[v];
            sum_[u] -= c;
            sum_[v] -= c;
            mask_[u] &= ~bit;
            mask_[v] &= ~bit;
            if (result != 0) return result;
            color_[e] = kNoColor;
        }
        return 0;
    }

    const MultiGraph& g_;
    Distinction kind_;
    int k_;
    long long budget_;
    long long nodes_ = 0;
    VertexId root_ = -1;
    std::vector<EdgeId> order_;
    std::vector<std::uint64_t> mask_;
    std::vector<long long> sum_;
    std::vector<int> left_;
    std::vector<Color> color_;
    std::vector<VertexId> saturated_;
};

}  // namespace

int pi_lower_bound(const MultiGraph& graph) {
    std::vector<long long> per_degree(static_cast<std::size_t>(graph.max_degree() + 1), 0);
    for (VertexId v = 0; v < graph.vertex_count(); ++v) ++per_degree[graph.degree(v)];
    int k = 0;
    for (int d = 1; d < static_cast<int>(per_degree.size()); ++d) {
        if (per_degree[d] == 0) continue;
        while (binom_capped(k, d, per_degree[d]) < per_degree[d]) ++k;
    }
    return k;
}

bool satisfies(const MultiGraph& graph, const std::vector<Color>& colors, Distinction kind) {
    if (static_cast<int>(colors.size()) != graph.edge_count()) return false;
    const Color top = colors.empty() ? 1 : *std::max_element(colors.begin(), colors.end());
    PartialColoring coloring(graph, std::max(top, 1));
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        if (colors[e] < 1) return false;
        if (coloring.edge_with(graph.endpoints(e).first, colors[e]) >= 0 ||
            coloring.edge_with(graph.endpoints(e).second, colors[e]) >= 0)
            return false;
        coloring.assign(e, colors[e]);
    }
    switch (kind) {
        case Distinction::Proper: return verify_proper(coloring);
        case Distinction::Vd: return verify_proper(coloring) && verify_vd(coloring);
        case Distinction::Sd: return verify_proper(coloring) && verify_sd(coloring);
    }
    return false;
}

OracleResult exact_index(const MultiGraph& graph, Distinction kind, long long budget) {
    if (kind != Distinction::Proper) check_domain(graph);
    else if (graph.edge_count() > 62) throw OracleError("too many edges for the exhaustive oracle");

    OracleResult out;
    int k = kind == Distinction::Proper ? graph.max_degree() : std::max(pi_lower_bound(graph), graph.max_degree());
    out.lower = k;
    if (graph.edge_count() == 0) {
        out.value = out.upper = out.lower = 0;
        out.exact = true;
        out.witness = std::vector<Color>{};
        return out;
    }
    for (; k <= 63; ++k) {
        Search search(graph, kind, k, budget - out.nodes_explored);
        long long nodes = 0;
        const int result = search.run(nodes);
        out.nodes_explored += nodes;
        if (result < 0) return out;
        if (result == 1) {
            out.value = out.upper = k;
            out.exact = true;
            out.witness = search.colors();
            return out;
        }
        out.lower = k + 1;
    }
    return out;
}

}  // namespace vdcolor
