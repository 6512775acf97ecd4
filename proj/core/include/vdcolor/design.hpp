#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vdcolor/coloring.hpp"
#include "vdcolor/graph.hpp"

namespace vdcolor {

class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { Vd, Sd };

using Block = std::array<Color, 3>;

// The twelve blocks of the (9,12,4,3,1) design on the points [9j-8, 9j].
std::vector<Block> bibd_blocks(int j);

// 2-regular cover of [0, n): triangles on consecutive ids, then one 4-cycle
// (n = 3q+1) or 5-cycle (n = 3q+2) on the last vertices.
struct CycleCover {
    int n = 0;
    int q = 0;
    int r = 0;
    std::vector<std::vector<VertexId>> cycles;

    int triangle_count() const { return r == 0 ? q : q - 1; }
    std::vector<std::pair<VertexId, VertexId>> edges() const;
};

CycleCover build_Q_vd(int n);

// Smallest c >= 10 with floor(n/4)+c divisible by 3.
int block_offset(int n);

struct PrecolorPlan {
    Mode mode = Mode::Vd;
    int n = 0;
    int q = 0;
    int r = 0;
    int d = 0;
    // Q edges as endpoint pairs, their ids in the host graph (once bound), and
    // the precoloring in the same order.
    std::vector<std::pair<VertexId, VertexId>> q_pairs;
    std::vector<EdgeId> q_edges;
    std::vector<Color> phi0;
    std::vector<Color> phi0_prime;  // sd only
    // Labels for i = 1..q stored at index i-1; y/z are -1 when absent.
    std::vector<VertexId> v, u, x;
    VertexId y = -1;
    VertexId z = -1;
    std::vector<Color> c0;
    std::vector<Color> c1;
    // vd only: the remainder cycle was colored by the compact search because
    // fresh colors ran out.
    bool compact_remainder = false;

    bool labeled() const { return !v.empty(); }
};

// Triangle i gets block B_i; the remainder cycle gets distinct fresh colors
// from [1, d+2]. With allow_compact, palette exhaustion is resolved by a
// search for remainder colors that keep every Q vertex set distinct.
PrecolorPlan precolor_vd(const CycleCover& cover, int d, bool allow_compact = false);

// Proper vertex coloring of `graph` with `classes` classes whose sizes differ
// by at most one. Returns the class of each vertex.
std::vector<int> equitable_vertex_coloring(const MultiGraph& graph, int classes, std::uint64_t seed);

// Star-forest Q inside a d-regular graph with d >= 2n/3, labeled v_i, u_i,
// x_i (and y_q, z_q).
PrecolorPlan build_Q_sd(const MultiGraph& graph, int d, std::uint64_t seed = 1);

// Fills phi0, phi0_prime, C0 and C1 of a labeled sd plan.
void precolor_sd(PrecolorPlan& plan);

// Replaces the colors of Q's edges by phi0_prime. The coloring must be total
// with palette d+2 and agree with phi0 on Q.
PartialColoring recolor_sd(const PartialColoring& coloring, const PrecolorPlan& plan);

// Closed-form vertex sums after recoloring, for labels i = 1..q (index i-1).
struct ExpectedSums {
    std::vector<long long> v, u, x;
    long long y = 0;
    long long z = 0;
    bool has_y = false;
    bool has_z = false;
    long long unlabeled = 0;

    std::vector<long long> all() const;
};

ExpectedSums expected_sums(int q, int r, long long s);

// Sum of [1, d+2] \ c0.
long long palette_sum(int d, const std::vector<Color>& c0);

// Per-vertex predicted sums for a labeled plan.
std::vector<long long> expected_vertex_sums(const PrecolorPlan& plan);

}  // namespace vdcolor
