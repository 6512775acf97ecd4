#include <gtest/gtest.h>

#include "helpers.hpp"
#include "vdcolor/multifan.hpp"

using namespace vdcolor;
using namespace testing_helpers;

namespace {

struct Precolored {
    std::vector<EdgeId> edges;
    std::vector<Color> colors;
};

// Random subgraph of maximum degree c, properly colored from [1, palette]
// with every color used on at most m edges.
Precolored random_precoloring(const MultiGraph& g, int c, int m, int palette, Rng& rng) {
    Precolored out;
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> uses(static_cast<std::size_t>(palette + 1), 0);
    std::vector<std::vector<char>> seen(static_cast<std::size_t>(g.vertex_count()),
                                        std::vector<char>(static_cast<std::size_t>(palette + 1), 0));
    std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) order[e] = e;
    rng.shuffle(order);
    for (EdgeId e : order) {
        const auto [u, v] = g.endpoints(e);
        if (degree[u] >= c || degree[v] >= c || rng.below(2) == 0) continue;
        std::vector<Color> options;
        for (Color col = 1; col <= palette; ++col)
            if (uses[col] < m && !seen[u][col] && !seen[v][col]) options.push_back(col);
        if (options.empty()) continue;
        const Color col = options[rng.below(options.size())];
        ++degree[u];
        ++degree[v];
        ++uses[col];
        seen[u][col] = seen[v][col] = 1;
        out.edges.push_back(e);
        out.colors.push_back(col);
    }
    return out;
}

}  // namespace

TEST(Multifan, MaximalFansOnRandomColorings) {
    Rng rng(31);
    int fans = 0;
    for (int round = 0; round < 80; ++round) {
        const MultiGraph g = random_regular(14, 6, rng.next());
        const PartialColoring c = random_partial(g, 7, rng, 0.9);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (c.colored(e)) continue;
            const Multifan fan = build_maximal_multifan(c, e);
            ++fans;
            ASSERT_TRUE(is_multifan(c, fan));
            ASSERT_TRUE(is_maximal(c, fan));
            ASSERT_EQ(fan.edges.size(), fan.vertices.size());
            EXPECT_EQ(fan.edges[0], e);
            EXPECT_EQ(fan.links[0], -1);
            for (std::size_t i = 1; i < fan.links.size(); ++i) EXPECT_LT(fan.links[i], static_cast<int>(i));
            for (int i = 0; i < static_cast<int>(fan.edges.size()); ++i) {
                const LinearSequence seq = linear_sequence_to(fan, i);
                EXPECT_TRUE(is_linear_sequence(c, fan, seq));
                EXPECT_EQ(seq.indices.front(), 0);
                EXPECT_EQ(seq.indices.back(), i);
            }
        }
    }
    EXPECT_GT(fans, 50);
}

TEST(Multifan, ShiftKeepsProperAndMovesTheHole) {
    Rng rng(32);
    int shifts = 0;
    for (int round = 0; round < 80; ++round) {
        const MultiGraph g = random_regular(12, 5, rng.next());
        PartialColoring c = random_partial(g, 6, rng, 0.9);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (c.colored(e)) continue;
            const Multifan fan = build_maximal_multifan(c, e);
            const int last = static_cast<int>(fan.edges.size()) - 1;
            if (last < 1) continue;
            const LinearSequence seq = linear_sequence_to(fan, last);
            const int h = static_cast<int>(seq.indices.size()) - 1;
            if (h < 1) continue;
            const int before = c.colored_count();
            shift(c, fan, seq, h);
            ++shifts;
            ASSERT_TRUE(proper_recount(c));
            EXPECT_EQ(c.colored_count(), before);
            EXPECT_TRUE(c.colored(e));
            EXPECT_FALSE(c.colored(fan.edges[seq.indices[h]]));
            break;
        }
    }
    EXPECT_GT(shifts, 10);
}

TEST(Multifan, RejectsColoredRoot) {
    const MultiGraph g = complete_graph(4);
    PartialColoring c(g, 4);
    c.assign(0, 1);
    EXPECT_THROW(build_maximal_multifan(c, 0), ColoringError);
    EXPECT_THROW(build_maximal_multifan(c, 1, 3), ColoringError);
}

TEST(Multifan, ShiftRejectsBadIndex) {
    const MultiGraph g = complete_graph(4);
    PartialColoring c(g, 4);
    const Multifan fan = build_maximal_multifan(c, 0);
    const LinearSequence seq = linear_sequence_to(fan, 0);
    EXPECT_THROW(shift(c, fan, seq, 1), ColoringError);
}

TEST(Multifan, ExtensionKeepsPrecolorAndUsesGuaranteedPalette) {
    Rng rng(33);
    int done = 0;
    for (int round = 0; round < 100; ++round) {
        const int n = 10 + 2 * static_cast<int>(rng.below(12));
        const int d = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 4)));
        const MultiGraph g = random_regular(n, d, rng.next());
        const int c = 1 + static_cast<int>(rng.below(3));
        const int m = std::vector<int>{1, 2, 4}[rng.below(3)];
        const int palette = d + 4 * c * m - 1;
        const Precolored q = random_precoloring(g, c, m, palette, rng);
        const Extension ext = extend_precoloring(g, q.edges, q.colors, c, m, 1);
        ++done;
        EXPECT_EQ(ext.palette, palette);
        EXPECT_TRUE(ext.stats.guaranteed);
        EXPECT_TRUE(ext.coloring.is_total());
        EXPECT_TRUE(proper_recount(ext.coloring));
        for (std::size_t i = 0; i < q.edges.size(); ++i) {
            EXPECT_EQ(ext.coloring.color(q.edges[i]), q.colors[i]);
            EXPECT_TRUE(ext.coloring.frozen(q.edges[i]));
        }
    }
    EXPECT_EQ(done, 100);
}

TEST(Multifan, ExtensionValidatesShape) {
    const MultiGraph g = complete_graph(6);
    // Edges 0 and 1 share vertex 0: degree 2 in the precolored subgraph.
    EXPECT_THROW(extend_precoloring(g, {0, 1}, {1, 2}, 1, 1, 1), ColoringError);
    // Edges 0 = 01 and 14 = 45 are disjoint but share a color.
    EXPECT_THROW(extend_precoloring(g, {0, 14}, {3, 3}, 1, 1, 1), ColoringError);
    EXPECT_THROW(extend_precoloring(g, {0}, {1, 2}, 1, 1, 1), ColoringError);
    EXPECT_THROW(extend_precoloring(g, {0}, {1}, 0, 1, 1), ColoringError);
}

TEST(Multifan, TryExtendBelowGuarantee) {
    Rng rng(34);
    const MultiGraph g = random_regular(20, 9, 7);
    const Precolored q = random_precoloring(g, 1, 1, 12, rng);
    const auto ext = try_extend(g, q.edges, q.colors, 12, 5, 1'000'000);
    ASSERT_TRUE(ext.has_value());
    EXPECT_TRUE(proper_recount(ext->coloring));
    EXPECT_TRUE(ext->coloring.is_total());
    for (std::size_t i = 0; i < q.edges.size(); ++i) EXPECT_EQ(ext->coloring.color(q.edges[i]), q.colors[i]);
}
