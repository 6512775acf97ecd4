#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "vdcolor/matching.hpp"

using namespace vdcolor;
using namespace testing_helpers;

namespace {

// r-regular bipartite multigraph: left side [0, side), right [side, 2 side),
// union of r random perfect matchings.
MultiGraph random_regular_bipartite(int side, int r, Rng& rng) {
    MultiGraph g(2 * side);
    std::vector<VertexId> perm(static_cast<std::size_t>(side));
    for (int i = 0; i < side; ++i) perm[i] = i;
    for (int k = 0; k < r; ++k) {
        rng.shuffle(perm);
        for (int i = 0; i < side; ++i) g.add_edge(i, side + perm[i]);
    }
    return g;
}

// Largest matching by exhaustive search over edge subsets.
int brute_matching(const MultiGraph& g, const std::vector<char>& allowed) {
    int best = 0;
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    auto rec = [&](auto&& self, EdgeId e, int size) -> void {
        best = std::max(best, size);
        if (e == g.edge_count()) return;
        self(self, e + 1, size);
        const auto [u, v] = g.endpoints(e);
        if (!allowed[e] || used[u] || used[v] || u == v) return;
        used[u] = used[v] = 1;
        self(self, e + 1, size + 1);
        used[u] = used[v] = 0;
    };
    rec(rec, 0, 0);
    return best;
}

bool is_matching(const MultiGraph& g, const std::vector<EdgeId>& edges) {
    std::set<VertexId> seen;
    for (EdgeId e : edges) {
        const auto [u, v] = g.endpoints(e);
        if (!seen.insert(u).second || !seen.insert(v).second) return false;
    }
    return true;
}

}  // namespace

TEST(Matching, PerfectInRegularBipartite) {
    Rng rng(61);
    for (int round = 0; round < 50; ++round) {
        const int side = 1 + static_cast<int>(rng.below(40));
        const int r = 1 + static_cast<int>(rng.below(6));
        const MultiGraph g = random_regular_bipartite(side, r, rng);
        std::vector<VertexId> left, right;
        for (int i = 0; i < side; ++i) {
            left.push_back(i);
            right.push_back(side + i);
        }
        const HallResult res = hall_matching(g, left, right);
        EXPECT_TRUE(res.perfect);
        EXPECT_EQ(res.matching.size(), static_cast<std::size_t>(side));
        EXPECT_TRUE(is_matching(g, res.matching));
    }
}

TEST(Matching, ViolatorWitnessesHallFailure) {
    // Left vertices 0,1,2 all adjacent only to right vertex 3; 4 and 5 hang off 1.
    MultiGraph g(6);
    g.add_edge(0, 3);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(1, 4);
    const std::vector<VertexId> left{0, 1, 2}, right{3, 4, 5};
    const HallResult res = hall_matching(g, left, right);
    EXPECT_FALSE(res.perfect);
    EXPECT_EQ(res.matching.size(), 2U);
    ASSERT_FALSE(res.violator.empty());
    EXPECT_LT(side_neighborhood(g, res.violator, right).size(), res.violator.size());
}

TEST(Matching, RandomHallFailuresCarryViolators) {
    Rng rng(62);
    int failures = 0;
    for (int round = 0; round < 200; ++round) {
        const int side = 2 + static_cast<int>(rng.below(8));
        MultiGraph g(2 * side);
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b)
                if (rng.below(4) == 0) g.add_edge(a, side + b);
        std::vector<VertexId> left, right;
        for (int i = 0; i < side; ++i) {
            left.push_back(i);
            right.push_back(side + i);
        }
        const HallResult res = hall_matching(g, left, right);
        EXPECT_TRUE(is_matching(g, res.matching));
        std::vector<char> allowed(static_cast<std::size_t>(g.edge_count()), 1);
        if (g.edge_count() <= 30) EXPECT_EQ(static_cast<int>(res.matching.size()), brute_matching(g, allowed));
        if (!res.perfect) {
            ++failures;
            EXPECT_LT(side_neighborhood(g, res.violator, right).size(), res.violator.size());
        }
    }
    EXPECT_GT(failures, 20);
}

TEST(Matching, BlossomMatchesBruteForce) {
    Rng rng(63);
    for (int round = 0; round < 150; ++round) {
        const int n = 3 + static_cast<int>(rng.below(8));
        MultiGraph g(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.below(3) == 0) g.add_edge(a, b);
        if (g.edge_count() > 22) continue;
        std::vector<char> allowed(static_cast<std::size_t>(g.edge_count()));
        for (auto& a : allowed) a = rng.below(5) != 0;
        const auto m = maximum_matching(g, allowed);
        EXPECT_TRUE(is_matching(g, m));
        for (EdgeId e : m) EXPECT_TRUE(allowed[e]);
        EXPECT_EQ(static_cast<int>(m.size()), brute_matching(g, allowed));
    }
}

TEST(Matching, BlossomOnOddCycles) {
    const MultiGraph c5 = cycle_graph(5);
    EXPECT_EQ(maximum_matching(c5, std::vector<char>(5, 1)).size(), 2U);
    const MultiGraph k6 = complete_graph(6);
    EXPECT_EQ(maximum_matching(k6, std::vector<char>(15, 1), {0}).size(), 3U);
}

TEST(Matching, Bipartition) {
    const auto sides = bipartition(cycle_graph(6));
    for (int v = 0; v < 6; ++v) EXPECT_NE(sides[v], sides[(v + 1) % 6]);
    EXPECT_THROW(bipartition(cycle_graph(5)), ColoringError);
}

TEST(Matching, KonigUsesExactlyMaxDegree) {
    Rng rng(64);
    for (int round = 0; round < 60; ++round) {
        const int side = 1 + static_cast<int>(rng.below(50));
        const int r = 1 + static_cast<int>(rng.below(8));
        const MultiGraph g = random_regular_bipartite(side, r, rng);
        const PartialColoring c = konig_color(g);
        EXPECT_EQ(c.palette(), r);
        EXPECT_TRUE(c.is_total());
        EXPECT_TRUE(proper_recount(c));
        for (Color col = 1; col <= r; ++col) EXPECT_EQ(c.class_edges(col).size(), static_cast<std::size_t>(side));
    }
}

TEST(Matching, KonigOnIrregularBipartite) {
    Rng rng(65);
    for (int round = 0; round < 40; ++round) {
        MultiGraph g(16);
        for (int i = 0; i < 30; ++i) g.add_edge(rng.index(8), 8 + rng.index(8));
        const PartialColoring c = konig_color(g);
        EXPECT_EQ(c.palette(), g.max_degree());
        EXPECT_TRUE(c.is_total());
        EXPECT_TRUE(proper_recount(c));
    }
}
