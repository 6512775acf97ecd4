#include <gtest/gtest.h>

#include <set>

#include "vdcolor/graph.hpp"

using namespace vdcolor;

TEST(Graph, CompleteGraphShape) {
    const MultiGraph g = complete_graph(5);
    EXPECT_EQ(g.vertex_count(), 5);
    EXPECT_EQ(g.edge_count(), 10);
    EXPECT_TRUE(g.is_regular());
    EXPECT_EQ(g.max_degree(), 4);
    EXPECT_TRUE(g.is_simple());
}

TEST(Graph, ParallelEdgesKeepDistinctIds) {
    MultiGraph g(3);
    const EdgeId a = g.add_edge(0, 1);
    const EdgeId b = g.add_edge(1, 0);
    EXPECT_NE(a, b);
    EXPECT_EQ(g.multiplicity(0, 1), 2);
    EXPECT_FALSE(g.is_simple());
    EXPECT_EQ(g.degree(0), 2);
    EXPECT_EQ(g.other(b, 1), 0);
}

TEST(Graph, RejectsLoopsAndRange) {
    MultiGraph g(3);
    EXPECT_THROW(g.add_edge(1, 1), GraphError);
    EXPECT_THROW(g.add_edge(0, 3), GraphError);
    EXPECT_THROW(g.add_edge(-1, 0), GraphError);
}

TEST(Graph, TextRoundTrip) {
    const MultiGraph g = random_regular(12, 5, 4);
    const MultiGraph h = read_graph(write_graph(g));
    EXPECT_EQ(write_graph(g), write_graph(h));
    EXPECT_EQ(h.edge_count(), 30);
}

TEST(Graph, ReadErrorsAreReported) {
    EXPECT_THROW(read_graph(""), GraphError);
    EXPECT_THROW(read_graph("3 1\n0 3\n"), GraphError);
    EXPECT_THROW(read_graph("3 1\n1 1\n"), GraphError);
    EXPECT_THROW(read_graph("3 2\n0 1\n"), GraphError);
    EXPECT_THROW(read_graph("3 1\n0 x\n"), GraphError);
}

TEST(Graph, RandomRegularIsSimpleRegularAndDeterministic) {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{10, 3}, {20, 7}, {30, 20}, {40, 33}, {60, 58}}) {
        const MultiGraph g = random_regular(n, d, 11);
        EXPECT_TRUE(g.is_simple());
        EXPECT_TRUE(g.is_regular());
        EXPECT_EQ(g.max_degree(), d);
        EXPECT_EQ(write_graph(g), write_graph(random_regular(n, d, 11)));
    }
    EXPECT_THROW(random_regular(7, 3, 1), GraphError);
    EXPECT_THROW(random_regular(6, 6, 1), GraphError);
}

TEST(Graph, DifferentSeedsUsuallyDiffer) {
    std::set<std::string> seen;
    for (std::uint64_t s = 1; s <= 5; ++s) seen.insert(write_graph(random_regular(16, 5, s)));
    EXPECT_GT(seen.size(), 1U);
}

TEST(Graph, ComplementOfCompleteIsEmpty) {
    EXPECT_EQ(complement(complete_graph(6)).edge_count(), 0);
    const MultiGraph c = complement(cycle_graph(6));
    EXPECT_EQ(c.edge_count(), 15 - 6);
    EXPECT_EQ(c.max_degree(), 3);
}

TEST(Graph, UnionKeepsBaseIdsFirst) {
    const MultiGraph base = cycle_graph(4);
    const MultiGraph u = union_with(base, {{0, 1}, {1, 3}});
    EXPECT_EQ(u.edge_count(), 6);
    for (EdgeId e = 0; e < base.edge_count(); ++e) EXPECT_EQ(u.endpoints(e), base.endpoints(e));
    EXPECT_EQ(u.multiplicity(0, 1), 2);
}

TEST(Graph, EdgeSubgraphMapsBothWays) {
    const MultiGraph g = complete_graph(4);
    std::vector<bool> keep(6, false);
    keep[1] = keep[4] = true;
    const EdgeSubgraph sub = edge_subgraph(g, keep);
    ASSERT_EQ(sub.graph.edge_count(), 2);
    EXPECT_EQ(sub.parent_edge[0], 1);
    EXPECT_EQ(sub.parent_edge[1], 4);
    EXPECT_EQ(sub.local_edge[4], 1);
    EXPECT_EQ(sub.local_edge[0], -1);
    EXPECT_EQ(sub.graph.endpoints(1), g.endpoints(4));
}

TEST(Graph, CompleteBipartite) {
    const MultiGraph g = complete_bipartite(3, 4);
    EXPECT_EQ(g.edge_count(), 12);
    EXPECT_EQ(g.degree(0), 4);
    EXPECT_EQ(g.degree(5), 3);
}
