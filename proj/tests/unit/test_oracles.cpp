#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "vdcolor/oracles.hpp"

using namespace vdcolor;
using namespace testing_helpers;

namespace {

bool distinguishes(const MultiGraph& g, const std::vector<Color>& colors, Distinction kind) {
    if (kind == Distinction::Proper) return true;
    std::set<std::vector<Color>> sets;
    std::set<long long> sums;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<Color> s;
        long long total = 0;
        for (const auto& inc : g.incident(v)) {
            s.push_back(colors[inc.edge]);
            total += colors[inc.edge];
        }
        std::sort(s.begin(), s.end());
        if (kind == Distinction::Vd && !sets.insert(s).second) return false;
        if (kind == Distinction::Sd && !sums.insert(total).second) return false;
    }
    return true;
}

// Plain enumeration of proper colorings with k colors, no symmetry breaking.
bool brute_exists(const MultiGraph& g, int k, Distinction kind) {
    std::vector<Color> colors(static_cast<std::size_t>(g.edge_count()), 0);
    auto rec = [&](auto&& self, EdgeId e) -> bool {
        if (e == g.edge_count()) return distinguishes(g, colors, kind);
        const auto [u, v] = g.endpoints(e);
        for (Color c = 1; c <= k; ++c) {
            bool clash = false;
            for (VertexId w : {u, v})
                for (const auto& inc : g.incident(w))
                    if (inc.edge < e && colors[inc.edge] == c) clash = true;
            if (clash) continue;
            colors[e] = c;
            if (self(self, e + 1)) return true;
        }
        colors[e] = 0;
        return false;
    };
    return rec(rec, 0);
}

int brute_index(const MultiGraph& g, Distinction kind) {
    for (int k = 1;; ++k)
        if (brute_exists(g, k, kind)) return k;
}

}  // namespace

TEST(Oracles, PiLowerBound) {
    EXPECT_EQ(pi_lower_bound(complete_graph(3)), 3);
    EXPECT_EQ(pi_lower_bound(complete_graph(4)), 4);
    EXPECT_EQ(pi_lower_bound(cycle_graph(5)), 4);
    EXPECT_EQ(pi_lower_bound(cycle_graph(6)), 4);
    EXPECT_EQ(pi_lower_bound(cycle_graph(3)), 3);
    EXPECT_EQ(pi_lower_bound(complete_graph(8)), 8);
}

TEST(Oracles, CompleteGraphs) {
    const int proper[] = {3, 3, 5, 5};
    const int vd[] = {3, 5, 5, 7};
    for (int n = 3; n <= 6; ++n) {
        const MultiGraph g = complete_graph(n);
        const OracleResult p = exact_index(g, Distinction::Proper);
        const OracleResult v = exact_index(g, Distinction::Vd);
        const OracleResult s = exact_index(g, Distinction::Sd);
        EXPECT_TRUE(p.exact && v.exact && s.exact);
        EXPECT_EQ(p.value, proper[n - 3]);
        EXPECT_EQ(v.value, vd[n - 3]);
        EXPECT_EQ(s.value, vd[n - 3]);
        ASSERT_TRUE(s.witness.has_value());
        EXPECT_TRUE(distinguishes(g, *s.witness, Distinction::Sd));
        EXPECT_TRUE(satisfies(g, *s.witness, Distinction::Sd));
    }
}

TEST(Oracles, CyclesAgreeWithEnumeration) {
    for (int n = 5; n <= 9; ++n) {
        const MultiGraph g = cycle_graph(n);
        const OracleResult v = exact_index(g, Distinction::Vd);
        EXPECT_EQ(v.value, brute_index(g, Distinction::Vd)) << "C" << n;
        EXPECT_EQ(exact_index(g, Distinction::Sd).value, brute_index(g, Distinction::Sd)) << "C" << n;
    }
    EXPECT_EQ(exact_index(cycle_graph(5), Distinction::Vd).value, 5);
    EXPECT_EQ(exact_index(cycle_graph(6), Distinction::Vd).value, 5);
    EXPECT_EQ(exact_index(cycle_graph(8), Distinction::Vd).value, 6);
}

TEST(Oracles, OrderingOnRandomSmallGraphs) {
    Rng rng(81);
    int checked = 0;
    for (int round = 0; round < 40; ++round) {
        const int n = 4 + static_cast<int>(rng.below(3));
        MultiGraph g(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.below(2) == 0) g.add_edge(a, b);
        OracleResult p, v, s;
        try {
            p = exact_index(g, Distinction::Proper);
            v = exact_index(g, Distinction::Vd);
            s = exact_index(g, Distinction::Sd);
        } catch (const OracleError&) {
            continue;
        }
        ++checked;
        EXPECT_LE(p.value, v.value);
        EXPECT_LE(v.value, s.value);
        EXPECT_GE(v.value, pi_lower_bound(g));
        if (g.edge_count() <= 10) {
            EXPECT_EQ(p.value, brute_index(g, Distinction::Proper));
            EXPECT_EQ(v.value, brute_index(g, Distinction::Vd));
            EXPECT_EQ(s.value, brute_index(g, Distinction::Sd));
        }
        ASSERT_TRUE(v.witness.has_value());
        EXPECT_TRUE(distinguishes(g, *v.witness, Distinction::Vd));
    }
    EXPECT_GT(checked, 15);
}

TEST(Oracles, DomainErrors) {
    MultiGraph isolated_edge(4);
    isolated_edge.add_edge(0, 1);
    isolated_edge.add_edge(2, 3);
    EXPECT_THROW(exact_index(isolated_edge, Distinction::Vd), OracleError);
    MultiGraph two_isolated(5);
    two_isolated.add_edge(0, 1);
    two_isolated.add_edge(1, 2);
    EXPECT_THROW(exact_index(two_isolated, Distinction::Vd), OracleError);
    EXPECT_THROW(exact_index(complete_graph(13), Distinction::Vd), OracleError);
}

TEST(Oracles, BudgetExhaustion) {
    const OracleResult r = exact_index(complete_graph(6), Distinction::Sd, 10);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.value, -1);
}
