#include "vdcolor/coloring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace vdcolor {

ColorSet ColorSet::full(int k) {
    ColorSet s(k);
    for (Color c = 1; c <= k; ++c) s.insert(c);
    return s;
}

int ColorSet::size() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
}

bool ColorSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Color ColorSet::first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<Color>(i * 64 + std::countr_zero(words_[i]));
    return kNoColor;
}

Color ColorSet::first_common(const ColorSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t w = words_[i] & other.words_[i];
        if (w) return static_cast<Color>(i * 64 + std::countr_zero(w));
    }
    return kNoColor;
}

std::vector<Color> ColorSet::members() const {
    std::vector<Color> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            out.push_back(static_cast<Color>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

PartialColoring::PartialColoring(const MultiGraph& graph, int k)
    : graph_(&graph),
      k_(k),
      color_(static_cast<std::size_t>(graph.edge_count()), kNoColor),
      present_(static_cast<std::size_t>(graph.vertex_count()), ColorSet(k)),
      missing_(static_cast<std::size_t>(graph.vertex_count()), ColorSet::full(k)),
      at_(static_cast<std::size_t>(graph.vertex_count()) * (k + 1), -1),
      missing_count_(static_cast<std::size_t>(k + 1), graph.vertex_count()),
      frozen_(static_cast<std::size_t>(graph.edge_count()), false) {
    if (k < 0) throw ColoringError("palette size must be non-negative");
    missing_count_[0] = 0;
}

PartialColoring blank(const MultiGraph& graph, int k) { return PartialColoring(graph, k); }

void PartialColoring::set(EdgeId e, Color c) {
    const auto [u, v] = graph_->endpoints(e);
    color_[e] = c;
    ++colored_;
    for (VertexId x : {u, v}) {
        present_[x].insert(c);
        missing_[x].erase(c);
        at_[static_cast<std::size_t>(x) * (k_ + 1) + c] = e;
    }
    missing_count_[c] -= 2;
}

void PartialColoring::clear(EdgeId e) {
    const Color c = color_[e];
    const auto [u, v] = graph_->endpoints(e);
    color_[e] = kNoColor;
    --colored_;
    for (VertexId x : {u, v}) {
        present_[x].erase(c);
        missing_[x].insert(c);
        at_[static_cast<std::size_t>(x) * (k_ + 1) + c] = -1;
    }
    missing_count_[c] += 2;
}

void PartialColoring::assign(EdgeId e, Color c) {
    if (e < 0 || e >= graph_->edge_count()) throw ColoringError("edge id out of range");
    if (c < 1 || c > k_) {
        throw ColoringError("color " + std::to_string(c) + " outside palette [1," +
                            std::to_string(k_) + "]");
    }
    if (color_[e] != kNoColor) throw ColoringError("edge " + std::to_string(e) + " already colored");
    const auto [u, v] = graph_->endpoints(e);
    if (!missing_[u].contains(c) || !missing_[v].contains(c)) {
        throw ColoringError("color " + std::to_string(c) + " clashes at an endpoint of edge " +
                            std::to_string(e));
    }
    set(e, c);
}

void PartialColoring::unassign(EdgeId e) {
    if (frozen_[e]) throw ColoringError("edge " + std::to_string(e) + " is frozen");
    if (color_[e] == kNoColor) return;
    clear(e);
}

void PartialColoring::recolor(EdgeId e, Color c) {
    unassign(e);
    assign(e, c);
}

void PartialColoring::freeze(EdgeId e) {
    if (color_[e] == kNoColor) throw ColoringError("cannot freeze uncolored edge " + std::to_string(e));
    frozen_[e] = true;
}

int PartialColoring::frozen_count() const {
    return static_cast<int>(std::count(frozen_.begin(), frozen_.end(), true));
}

std::vector<EdgeId> PartialColoring::class_edges(Color c) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < graph_->edge_count(); ++e)
        if (color_[e] == c) out.push_back(e);
    return out;
}

bool KempeChain::contains_vertex(const MultiGraph& g, VertexId v) const {
    for (EdgeId e : edges) {
        auto [a, b] = g.endpoints(e);
        if (a == v || b == v) return true;
    }
    return false;
}

KempeChain kempe_chain(const PartialColoring& coloring, VertexId start, Color alpha, Color beta) {
    if (alpha == beta) throw ColoringError("kempe_chain needs two distinct colors");
    const int k = coloring.palette();
    if (alpha < 1 || alpha > k || beta < 1 || beta > k) throw ColoringError("chain color outside palette");
    const MultiGraph& g = coloring.graph();
    KempeChain chain;
    chain.alpha = alpha;
    chain.beta = beta;

    const EdgeId ea = coloring.edge_with(start, alpha);
    const EdgeId eb = coloring.edge_with(start, beta);
    if (ea < 0 && eb < 0) return chain;

    // Follow the alternating walk leaving `from` through `first`.
    auto walk = [&](EdgeId first, VertexId from, std::vector<EdgeId>& out) -> VertexId {
        EdgeId e = first;
        VertexId at = from;
        while (true) {
            out.push_back(e);
            at = g.other(e, at);
            if (at == start) return at;
            const Color next = coloring.color(e) == alpha ? beta : alpha;
            const EdgeId f = coloring.edge_with(at, next);
            if (f < 0) return at;
            e = f;
        }
    };

    if (ea >= 0 && eb >= 0) {
        std::vector<EdgeId> forward;
        const VertexId end1 = walk(ea, start, forward);
        if (end1 == start) {
            chain.kind = ChainKind::Cycle;
            chain.edges = std::move(forward);
            return chain;
        }
        std::vector<EdgeId> backward;
        const VertexId end0 = walk(eb, start, backward);
        std::reverse(backward.begin(), backward.end());
        chain.edges = std::move(backward);
        chain.edges.insert(chain.edges.end(), forward.begin(), forward.end());
        chain.endpoints = {end0, end1};
        return chain;
    }
    std::vector<EdgeId> forward;
    const VertexId end = walk(ea >= 0 ? ea : eb, start, forward);
    chain.edges = std::move(forward);
    chain.endpoints = {start, end};
    return chain;
}

bool chain_has_frozen(const PartialColoring& coloring, const KempeChain& chain) {
    return std::any_of(chain.edges.begin(), chain.edges.end(),
                       [&](EdgeId e) { return coloring.frozen(e); });
}

void kempe_switch_unchecked(PartialColoring& coloring, const std::vector<EdgeId>& edges, Color alpha,
                            Color beta) {
    std::vector<Color> old;
    old.reserve(edges.size());
    for (EdgeId e : edges) {
        old.push_back(coloring.color(e));
        coloring.clear(e);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) coloring.set(edges[i], old[i] == alpha ? beta : alpha);
}

void kempe_switch(PartialColoring& coloring, const KempeChain& chain) {
    if (chain_has_frozen(coloring, chain)) throw ColoringError("Kempe chain contains a frozen edge");
    for (EdgeId e : chain.edges) {
        const Color c = coloring.color(e);
        if (c != chain.alpha && c != chain.beta) throw ColoringError("stale Kempe chain");
    }
    kempe_switch_unchecked(coloring, chain.edges, chain.alpha, chain.beta);
}

std::optional<std::string> proper_violation(const PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    const int k = coloring.palette();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Color c = coloring.color(e);
        if (c < 0 || c > k) return "edge " + std::to_string(e) + " has color outside palette";
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<EdgeId> seen(static_cast<std::size_t>(k + 1), -1);
        for (const auto& inc : g.incident(v)) {
            const Color c = coloring.color(inc.edge);
            if (c == kNoColor) continue;
            if (seen[c] >= 0) {
                return "proper: edges " + std::to_string(seen[c]) + " and " + std::to_string(inc.edge) +
                       " share color " + std::to_string(c) + " at vertex " + std::to_string(v);
            }
            seen[c] = inc.edge;
        }
    }
    return std::nullopt;
}

bool verify_proper(const PartialColoring& coloring) { return !proper_violation(coloring); }

namespace {

void require_total(const PartialColoring& coloring, const char* what) {
    for (EdgeId e = 0; e < coloring.graph().edge_count(); ++e) {
        if (coloring.color(e) == kNoColor) {
            throw ColoringError(std::string(what) + " requires a total coloring; edge " +
                                std::to_string(e) + " is uncolored");
        }
    }
}

}  // namespace

std::vector<std::vector<Color>> color_sets(const PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    std::vector<std::vector<Color>> sets(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const auto& inc : g.incident(v))
            if (coloring.color(inc.edge) != kNoColor) sets[v].push_back(coloring.color(inc.edge));
        std::sort(sets[v].begin(), sets[v].end());
        sets[v].erase(std::unique(sets[v].begin(), sets[v].end()), sets[v].end());
    }
    return sets;
}

std::vector<long long> color_sums(const PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    std::vector<long long> sums(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.endpoints(e);
        sums[u] += coloring.color(e);
        sums[v] += coloring.color(e);
    }
    return sums;
}

std::optional<std::string> vd_violation(const PartialColoring& coloring) {
    require_total(coloring, "verify_vd");
    const int n = coloring.graph().vertex_count();
    // Sort the per-vertex bitsets and compare neighbors in sorted order.
    std::vector<ColorSet> sets(static_cast<std::size_t>(n), ColorSet(coloring.palette()));
    const MultiGraph& g = coloring.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.endpoints(e);
        sets[u].insert(coloring.color(e));
        sets[v].insert(coloring.color(e));
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (sets[a] < sets[b]) return true;
        if (sets[b] < sets[a]) return false;
        return a < b;
    });
    for (int i = 1; i < n; ++i) {
        if (sets[order[i - 1]] == sets[order[i]]) {
            return "vd: vertices " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]) +
                   " see the same color set";
        }
    }
    return std::nullopt;
}

std::optional<std::string> sd_violation(const PartialColoring& coloring) {
    require_total(coloring, "verify_sd");
    const auto sums = color_sums(coloring);
    std::vector<int> order(sums.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return sums[a] != sums[b] ? sums[a] < sums[b] : a < b;
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (sums[order[i - 1]] == sums[order[i]]) {
            return "sd: vertices " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]) +
                   " share color sum " + std::to_string(sums[order[i]]);
        }
    }
    return std::nullopt;
}

bool verify_vd(const PartialColoring& coloring) { return !vd_violation(coloring); }
bool verify_sd(const PartialColoring& coloring) { return !sd_violation(coloring); }

bool parity_check(const PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    const int k = coloring.palette();
    const int n = g.vertex_count();
    for (Color c = 1; c <= k; ++c) {
        int missing = 0;
        for (VertexId v = 0; v < n; ++v) {
            bool seen = false;
            for (const auto& inc : g.incident(v)) seen = seen || coloring.color(inc.edge) == c;
            missing += !seen;
        }
        if ((missing - n) % 2 != 0) return false;
    }
    return true;
}

int missing_spread(const PartialColoring& coloring) {
    const int k = coloring.palette();
    if (k < 2) return 0;
    const MultiGraph& g = coloring.graph();
    std::vector<int> class_size(static_cast<std::size_t>(k + 1), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) ++class_size[coloring.color(e)];
    int lo = g.vertex_count(), hi = 0;
    for (Color c = 1; c <= k; ++c) {
        const int missing = g.vertex_count() - 2 * class_size[c];
        lo = std::min(lo, missing);
        hi = std::max(hi, missing);
    }
    return hi - lo;
}

bool bookkeeping_consistent(const PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    const int k = coloring.palette();
    std::vector<ColorSet> present(static_cast<std::size_t>(g.vertex_count()), ColorSet(k));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Color c = coloring.color(e);
        if (c == kNoColor) continue;
        const auto [u, v] = g.endpoints(e);
        present[u].insert(c);
        present[v].insert(c);
        if (coloring.edge_with(u, c) != e || coloring.edge_with(v, c) != e) return false;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!(present[v] == coloring.present(v))) return false;
        for (Color c = 1; c <= k; ++c) {
            if (coloring.misses(v, c) == present[v].contains(c)) return false;
            if (!present[v].contains(c) && coloring.edge_with(v, c) != -1) return false;
        }
    }
    for (Color c = 1; c <= k; ++c) {
        int count = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) count += !present[v].contains(c);
        if (count != coloring.missing_count(c)) return false;
    }
    return true;
}

std::string write_coloring(const PartialColoring& coloring) {
    const MultiGraph& g = coloring.graph();
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << ' ' << coloring.palette() << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.endpoints(e);
        out << e << ' ' << u << ' ' << v << ' ' << coloring.color(e) << '\n';
    }
    const auto sets = color_sets(coloring);
    const auto sums = color_sums(coloring);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << v << ' ' << sums[v] << ' ' << sets[v].size();
        for (Color c : sets[v]) out << ' ' << c;
        out << '\n';
    }
    return out.str();
}

namespace {

class TokenReader {
public:
    explicit TokenReader(std::string_view text) : text_(text) {}

    long long next(const char* what) {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
        long long value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
        if (pos_ == end || ec != std::errc() || ptr != text_.data() + end) {
            throw ColoringError(std::string("coloring file: expected integer for ") + what);
        }
        pos_ = end;
        return value;
    }

    bool at_end() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return pos_ == text_.size();
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ColoringFile parse_coloring(std::string_view text) {
    TokenReader in(text);
    ColoringFile f;
    f.n = static_cast<int>(in.next("n"));
    f.m = static_cast<int>(in.next("m"));
    f.k = static_cast<int>(in.next("k"));
    if (f.n < 0 || f.m < 0 || f.k < 0) throw ColoringError("coloring file: negative header field");
    for (int i = 0; i < f.m; ++i) {
        if (in.next("edge id") != i) throw ColoringError("coloring file: edge records out of order");
        const auto u = static_cast<VertexId>(in.next("u"));
        const auto v = static_cast<VertexId>(in.next("v"));
        f.endpoints.emplace_back(u, v);
        f.colors.push_back(static_cast<Color>(in.next("color")));
    }
    for (int v = 0; v < f.n; ++v) {
        if (in.next("vertex id") != v) throw ColoringError("coloring file: vertex records out of order");
        f.sums.push_back(in.next("sum"));
        const auto count = in.next("set size");
        if (count < 0) throw ColoringError("coloring file: negative set size");
        std::vector<Color> set;
        for (long long i = 0; i < count; ++i) set.push_back(static_cast<Color>(in.next("set member")));
        f.sets.push_back(std::move(set));
    }
    if (!in.at_end()) throw ColoringError("coloring file: trailing data");
    return f;
}

}  // namespace vdcolor
