#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vdcolor/graph.hpp"

namespace vdcolor {

// Colors are 1-based; 0 marks an uncolored edge.
using Color = int;
inline constexpr Color kNoColor = 0;

// Raised when an operation would break properness, touch a frozen edge, or is
// handed a coloring that does not meet its precondition.
class ColoringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fixed-width bitset over the palette [1, k].
class ColorSet {
public:
    ColorSet() = default;
    explicit ColorSet(int k) : k_(k), words_(static_cast<std::size_t>(k / 64 + 1), 0) {}
    static ColorSet full(int k);

    int palette() const noexcept { return k_; }
    bool contains(Color c) const {
        return c >= 1 && c <= k_ && ((words_[c >> 6] >> (c & 63)) & 1U);
    }
    void insert(Color c) { words_[c >> 6] |= std::uint64_t{1} << (c & 63); }
    void erase(Color c) { words_[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }
    int size() const;
    bool empty() const;
    // Smallest member, or kNoColor.
    Color first() const;
    // Smallest member of this ∩ other, or kNoColor.
    Color first_common(const ColorSet& other) const;
    bool intersects(const ColorSet& other) const { return first_common(other) != kNoColor; }
    std::vector<Color> members() const;

    friend bool operator==(const ColorSet&, const ColorSet&) = default;
    friend bool operator<(const ColorSet& a, const ColorSet& b) { return a.words_ < b.words_; }

private:
    int k_ = 0;
    std::vector<std::uint64_t> words_;
};

// Proper partial edge coloring with incrementally maintained present/missing
// sets. The graph must outlive the coloring.
class PartialColoring {
public:
    PartialColoring(const MultiGraph& graph, int k);

    const MultiGraph& graph() const noexcept { return *graph_; }
    int palette() const noexcept { return k_; }

    Color color(EdgeId e) const { return color_[e]; }
    bool colored(EdgeId e) const { return color_[e] != kNoColor; }
    int colored_count() const noexcept { return colored_; }
    bool is_total() const noexcept { return colored_ == graph_->edge_count(); }

    const ColorSet& present(VertexId v) const { return present_[v]; }
    const ColorSet& missing(VertexId v) const { return missing_[v]; }
    bool misses(VertexId v, Color c) const { return missing_[v].contains(c); }
    // The edge at v carrying color c, or -1.
    EdgeId edge_with(VertexId v, Color c) const {
        return at_[static_cast<std::size_t>(v) * (k_ + 1) + c];
    }
    // |{v : c missing at v}|
    int missing_count(Color c) const { return missing_count_[c]; }

    bool frozen(EdgeId e) const { return frozen_[e]; }
    void freeze(EdgeId e);
    int frozen_count() const;

    void assign(EdgeId e, Color c);
    void unassign(EdgeId e);
    void recolor(EdgeId e, Color c);

    std::vector<EdgeId> class_edges(Color c) const;
    std::vector<Color> colors() const { return color_; }

private:
    friend void kempe_switch_unchecked(PartialColoring&, const std::vector<EdgeId>&, Color, Color);

    void set(EdgeId e, Color c);
    void clear(EdgeId e);

    const MultiGraph* graph_;
    int k_;
    int colored_ = 0;
    std::vector<Color> color_;
    std::vector<ColorSet> present_;
    std::vector<ColorSet> missing_;
    std::vector<EdgeId> at_;
    std::vector<int> missing_count_;
    std::vector<bool> frozen_;
};

PartialColoring blank(const MultiGraph& graph, int k);

enum class ChainKind { Path, Cycle };

// Connected component of the subgraph colored alpha or beta. Edges are listed
// in walk order; a path lists them from endpoints[0] to endpoints[1].
struct KempeChain {
    Color alpha = kNoColor;
    Color beta = kNoColor;
    std::vector<EdgeId> edges;
    ChainKind kind = ChainKind::Path;
    std::vector<VertexId> endpoints;  // 0 (cycle or single vertex) or 2

    bool contains_vertex(const MultiGraph& g, VertexId v) const;
};

KempeChain kempe_chain(const PartialColoring& coloring, VertexId start, Color alpha, Color beta);

// Interchanges alpha and beta on the chain. Throws if the chain holds a frozen edge.
void kempe_switch(PartialColoring& coloring, const KempeChain& chain);
void kempe_switch_unchecked(PartialColoring& coloring, const std::vector<EdgeId>& edges, Color alpha,
                            Color beta);
bool chain_has_frozen(const PartialColoring& coloring, const KempeChain& chain);

// Independent verifiers: they recompute everything from the raw edge colors.
bool verify_proper(const PartialColoring& coloring);
bool verify_vd(const PartialColoring& coloring);
bool verify_sd(const PartialColoring& coloring);
// Same checks, returning a description of the first violated constraint.
std::optional<std::string> proper_violation(const PartialColoring& coloring);
std::optional<std::string> vd_violation(const PartialColoring& coloring);
std::optional<std::string> sd_violation(const PartialColoring& coloring);

// |{v : i missing at v}| ≡ |V| (mod 2) for every color i.
bool parity_check(const PartialColoring& coloring);

// Per-vertex labels derived from a coloring.
std::vector<std::vector<Color>> color_sets(const PartialColoring& coloring);
std::vector<long long> color_sums(const PartialColoring& coloring);

// max over color pairs of | |φ̄⁻¹(i)| - |φ̄⁻¹(j)| |, recounted from scratch.
int missing_spread(const PartialColoring& coloring);

// Recomputes present/missing/count bookkeeping from the edge colors and
// compares it with the incrementally maintained state.
bool bookkeeping_consistent(const PartialColoring& coloring);

// Structured dump: "n m k", then per edge "id u v color", then per vertex
// "id sum count c1 .. c_count".
std::string write_coloring(const PartialColoring& coloring);

struct ColoringFile {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<std::pair<VertexId, VertexId>> endpoints;
    std::vector<Color> colors;
    std::vector<long long> sums;
    std::vector<std::vector<Color>> sets;
};

ColoringFile parse_coloring(std::string_view text);

}  // namespace vdcolor
