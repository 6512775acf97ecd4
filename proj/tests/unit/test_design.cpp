#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "vdcolor/design.hpp"

using namespace vdcolor;
using namespace testing_helpers;

namespace {

// Labeled sd plan on vertex ids 0..n-1 without a host graph; enough for
// precolor_sd and the closed-form sums.
PrecolorPlan synthetic_plan(int q, int r, int d) {
    PrecolorPlan plan;
    plan.mode = Mode::Sd;
    plan.q = q;
    plan.r = r;
    plan.n = 3 * q + r;
    plan.d = d;
    for (int i = 0; i < q; ++i) {
        plan.v.push_back(3 * i);
        plan.u.push_back(3 * i + 1);
        plan.x.push_back(3 * i + 2);
        plan.q_pairs.emplace_back(3 * i, 3 * i + 1);
        plan.q_pairs.emplace_back(3 * i, 3 * i + 2);
    }
    if (r >= 1) {
        plan.y = 3 * q;
        plan.q_pairs.emplace_back(plan.v.back(), plan.y);
    }
    if (r == 2) {
        plan.z = 3 * q + 1;
        plan.q_pairs.emplace_back(plan.y, plan.z);
    }
    plan.q_edges.resize(plan.q_pairs.size());
    return plan;
}

// Vertex sums after recoloring, derived directly: every vertex starts at s and
// each incident Q edge moves it by phi0_prime - phi0.
std::vector<long long> simulated_sums(const PrecolorPlan& plan, long long s) {
    std::vector<long long> out(static_cast<std::size_t>(plan.n), s);
    for (std::size_t i = 0; i < plan.q_pairs.size(); ++i) {
        const long long delta = plan.phi0_prime[i] - plan.phi0[i];
        out[plan.q_pairs[i].first] += delta;
        out[plan.q_pairs[i].second] += delta;
    }
    return out;
}

bool proper_on_pairs(const std::vector<std::pair<VertexId, VertexId>>& pairs, const std::vector<Color>& colors) {
    std::set<std::pair<VertexId, Color>> seen;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!seen.insert({pairs[i].first, colors[i]}).second) return false;
        if (!seen.insert({pairs[i].second, colors[i]}).second) return false;
    }
    return true;
}

}  // namespace

TEST(Design, BlocksCoverEveryPairOnce) {
    for (int j = 1; j <= 20; ++j) {
        const auto blocks = bibd_blocks(j);
        ASSERT_EQ(blocks.size(), 12U);
        std::map<std::pair<Color, Color>, int> count;
        for (const Block& b : blocks) {
            for (Color c : b) {
                EXPECT_GE(c, 9 * j - 8);
                EXPECT_LE(c, 9 * j);
            }
            for (int a = 0; a < 3; ++a)
                for (int c = a + 1; c < 3; ++c) ++count[{std::min(b[a], b[c]), std::max(b[a], b[c])}];
        }
        EXPECT_EQ(count.size(), 36U);
        for (const auto& [pair, k] : count) EXPECT_EQ(k, 1);
    }
    EXPECT_THROW(bibd_blocks(0), DesignError);
}

TEST(Design, CycleCoverIsTwoRegular) {
    for (int n = 6; n <= 60; ++n) {
        const CycleCover cover = build_Q_vd(n);
        EXPECT_EQ(cover.q, n / 3);
        EXPECT_EQ(cover.r, n % 3);
        std::vector<int> degree(static_cast<std::size_t>(n), 0);
        for (auto [a, b] : cover.edges()) {
            ++degree[a];
            ++degree[b];
        }
        for (int v = 0; v < n; ++v) EXPECT_EQ(degree[v], 2);
        int triangles = 0;
        for (const auto& cyc : cover.cycles) triangles += cyc.size() == 3;
        EXPECT_EQ(triangles, cover.triangle_count());
        EXPECT_EQ(cover.cycles.size(), static_cast<std::size_t>(cover.triangle_count() + (cover.r > 0)));
    }
    EXPECT_THROW(build_Q_vd(5), DesignError);
}

TEST(Design, BlockOffset) {
    for (int n = 6; n <= 200; ++n) {
        const int c = block_offset(n);
        EXPECT_GE(c, 10);
        EXPECT_LT(c, 13);
        EXPECT_EQ((n / 4 + c) % 3, 0);
    }
}

TEST(Design, VdPrecoloringGivesDistinctSets) {
    for (int n = 6; n <= 60; ++n) {
        const CycleCover cover = build_Q_vd(n);
        const PrecolorPlan plan = precolor_vd(cover, n - 1, true);
        ASSERT_EQ(plan.phi0.size(), plan.q_pairs.size());
        EXPECT_TRUE(proper_on_pairs(plan.q_pairs, plan.phi0));
        std::vector<std::set<Color>> sets(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < plan.q_pairs.size(); ++i) {
            EXPECT_GE(plan.phi0[i], 1);
            EXPECT_LE(plan.phi0[i], n + 1);
            sets[plan.q_pairs[i].first].insert(plan.phi0[i]);
            sets[plan.q_pairs[i].second].insert(plan.phi0[i]);
        }
        EXPECT_EQ(std::set<std::set<Color>>(sets.begin(), sets.end()).size(), static_cast<std::size_t>(n));
    }
}

TEST(Design, EquitableVertexColoring) {
    Rng rng(51);
    for (int round = 0; round < 30; ++round) {
        const int n = 10 + static_cast<int>(rng.below(30));
        const int d = 2 + static_cast<int>(rng.below(4));
        if ((n * d) % 2) continue;
        const MultiGraph g = random_regular(n, d, rng.next());
        const int classes = d + 1 + static_cast<int>(rng.below(3));
        const auto cls = equitable_vertex_coloring(g, classes, rng.next());
        for (auto [a, b] : g.edges()) EXPECT_NE(cls[a], cls[b]);
        std::vector<int> size(static_cast<std::size_t>(classes), 0);
        for (int c : cls) ++size[c];
        EXPECT_LE(*std::max_element(size.begin(), size.end()) - *std::min_element(size.begin(), size.end()), 1);
    }
}

TEST(Design, StarForestStructure) {
    Rng rng(52);
    for (int round = 0; round < 30; ++round) {
        const int n = 12 + 2 * static_cast<int>(rng.below(20));
        const int d = (2 * n + 2) / 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 3 - 1)));
        if (d >= n) continue;
        const MultiGraph g = random_regular(n, d, rng.next());
        PrecolorPlan plan = build_Q_sd(g, d, rng.next());
        precolor_sd(plan);
        EXPECT_EQ(plan.q, n / 3);
        EXPECT_EQ(plan.r, n % 3);
        ASSERT_EQ(plan.q_edges.size(), plan.q_pairs.size());
        std::set<VertexId> labels(plan.v.begin(), plan.v.end());
        labels.insert(plan.u.begin(), plan.u.end());
        labels.insert(plan.x.begin(), plan.x.end());
        if (plan.y >= 0) labels.insert(plan.y);
        if (plan.z >= 0) labels.insert(plan.z);
        EXPECT_EQ(labels.size(), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < plan.q_edges.size(); ++i) {
            const auto [a, b] = g.endpoints(plan.q_edges[i]);
            EXPECT_EQ(std::minmax(a, b), std::minmax(plan.q_pairs[i].first, plan.q_pairs[i].second));
        }
        EXPECT_TRUE(proper_on_pairs(plan.q_pairs, plan.phi0));
        for (Color c : plan.c0) EXPECT_FALSE(std::count(plan.c1.begin(), plan.c1.end(), c));
        for (Color c : plan.phi0) EXPECT_TRUE(std::count(plan.c1.begin(), plan.c1.end(), c));
        const auto predicted = expected_vertex_sums(plan);
        EXPECT_EQ(predicted, simulated_sums(plan, palette_sum(d, plan.c0)));
    }
}

TEST(Design, ClosedFormSumsMatchSimulationAndAreDistinct) {
    for (int q = 2; q <= 40; ++q) {
        for (int r = 0; r <= 2; ++r) {
            const int d = 2 * (3 * q + r) / 3 + 2;
            PrecolorPlan plan = synthetic_plan(q, r, d);
            precolor_sd(plan);
            const long long s = palette_sum(d, plan.c0);
            const ExpectedSums sums = expected_sums(q, r, s);
            const auto simulated = simulated_sums(plan, s);
            std::vector<long long> labeled;
            for (int i = 0; i < q; ++i) {
                EXPECT_EQ(sums.v[i], simulated[plan.v[i]]) << "q=" << q << " r=" << r << " i=" << i;
                EXPECT_EQ(sums.u[i], simulated[plan.u[i]]);
                EXPECT_EQ(sums.x[i], simulated[plan.x[i]]);
            }
            if (r >= 1) EXPECT_EQ(sums.y, simulated[plan.y]);
            if (r == 2) EXPECT_EQ(sums.z, simulated[plan.z]);
            const auto all = sums.all();
            EXPECT_EQ(all.size(), static_cast<std::size_t>(3 * q + r));
            EXPECT_EQ(std::set<long long>(all.begin(), all.end()).size(), all.size()) << "q=" << q << " r=" << r;
        }
    }
}

TEST(Design, PaletteSum) {
    EXPECT_EQ(palette_sum(4, {}), 21);
    EXPECT_EQ(palette_sum(4, {2, 6}), 13);
}

TEST(Design, StarForestRejectsSparseGraphs) {
    const MultiGraph g = random_regular(12, 4, 1);
    EXPECT_THROW(build_Q_sd(g, 4), DesignError);
    EXPECT_THROW(build_Q_sd(complete_graph(12), 10), DesignError);
}
