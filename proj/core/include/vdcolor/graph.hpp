#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vdcolor {

using VertexId = int;
using EdgeId = int;

// Thrown for malformed input: bad graph text, out-of-range vertices, loops.
class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Incidence {
    EdgeId edge;
    VertexId neighbor;
};

// Loopless multigraph with stable, dense edge identities. Parallel edges get
// distinct EdgeIds.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n);

    EdgeId add_edge(VertexId u, VertexId v);

    int vertex_count() const noexcept { return static_cast<int>(incidence_.size()); }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    const std::pair<VertexId, VertexId>& endpoints(EdgeId e) const { return edges_[e]; }
    VertexId other(EdgeId e, VertexId v) const {
        const auto& [a, b] = edges_[e];
        return a == v ? b : a;
    }
    const std::vector<Incidence>& incident(VertexId v) const { return incidence_[v]; }
    int degree(VertexId v) const { return static_cast<int>(incidence_[v].size()); }
    int max_degree() const;
    int min_degree() const;
    bool is_regular() const { return vertex_count() == 0 || max_degree() == min_degree(); }
    bool is_simple() const;
    // Number of edges joining u and v.
    int multiplicity(VertexId u, VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const { return multiplicity(u, v) > 0; }

    const std::vector<std::pair<VertexId, VertexId>>& edges() const noexcept { return edges_; }

private:
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::vector<std::vector<Incidence>> incidence_;
};

// A materialized edge-induced subgraph that remembers where its edges came from.
struct EdgeSubgraph {
    MultiGraph graph;
    std::vector<EdgeId> parent_edge;  // subgraph EdgeId -> parent EdgeId
    std::vector<EdgeId> local_edge;   // parent EdgeId -> subgraph EdgeId or -1
};

EdgeSubgraph edge_subgraph(const MultiGraph& parent, const std::vector<bool>& keep);

MultiGraph complete_graph(int n);
MultiGraph cycle_graph(int n);
MultiGraph complete_bipartite(int left, int right);

// Simple d-regular graph from the pairing model. When d > (n-1)/2 the
// complement is generated instead. Deterministic for a fixed seed.
MultiGraph random_regular(int n, int d, std::uint64_t seed, int max_retries = 1000);

// base + extra_edges; parallel edges are kept.
MultiGraph union_with(const MultiGraph& base,
                      const std::vector<std::pair<VertexId, VertexId>>& extra_edges);

// Complement of a simple graph.
MultiGraph complement(const MultiGraph& g);

// Text edge list: header "n m" followed by m lines "u v" (0-based).
MultiGraph read_graph(std::string_view text);
std::string write_graph(const MultiGraph& g);

}  // namespace vdcolor
