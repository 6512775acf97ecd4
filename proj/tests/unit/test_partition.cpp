#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "vdcolor/partition.hpp"

using namespace vdcolor;
using namespace testing_helpers;

namespace {

std::vector<std::pair<VertexId, VertexId>> random_pairs(int n, int count, Rng& rng) {
    std::vector<VertexId> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int i = 0; i < count; ++i) pairs.emplace_back(perm[2 * i], perm[2 * i + 1]);
    return pairs;
}

int recount_discrepancy(const MultiGraph& g, const std::vector<Side>& side) {
    int worst = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        int a = 0, b = 0;
        for (const auto& inc : g.incident(v)) (side[inc.neighbor] == Side::A ? a : b) += 1;
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

}  // namespace

TEST(Partition, DefaultTarget) {
    EXPECT_EQ(default_discrepancy_target(2), 1);
    EXPECT_EQ(default_discrepancy_target(16), 4);   // 8^(2/3) = 4
    EXPECT_EQ(default_discrepancy_target(18), 5);   // 9^(2/3) ~ 4.33
    EXPECT_EQ(default_discrepancy_target(54), 9);   // 27^(2/3) = 9
    for (int n = 2; n <= 400; n += 2) {
        const int t = default_discrepancy_target(n);
        const double exact = std::pow(n / 2.0, 2.0 / 3.0);
        EXPECT_GE(t + 1e-9, exact);
        EXPECT_LT(t - 1 + 1e-9, exact);
    }
}

TEST(Partition, CertifiedOnRandomRegular) {
    Rng rng(41);
    for (int round = 0; round < 40; ++round) {
        const int n = 12 + 2 * static_cast<int>(rng.below(25));
        const int d = (2 * n + 2) / 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 3)));
        if (d >= n) continue;
        const MultiGraph g = random_regular(n, d, rng.next());
        const auto pairs = random_pairs(n, n / 4, rng);
        const Partition p = balanced_partition(g, pairs, rng.next());
        EXPECT_EQ(p.size_a, n / 2);
        EXPECT_EQ(p.size_b, n / 2);
        for (const auto& [a, b] : pairs) EXPECT_NE(p.side[a], p.side[b]);
        EXPECT_EQ(p.discrepancy, recount_discrepancy(g, p.side));
        EXPECT_LE(p.discrepancy, default_discrepancy_target(n));
        EXPECT_TRUE(partition_consistent(g, p));
        EXPECT_EQ(partition_bits(p).size(), static_cast<std::size_t>(n));
    }
}

TEST(Partition, Deterministic) {
    const MultiGraph g = random_regular(30, 21, 5);
    Rng rng(1);
    const auto pairs = random_pairs(30, 7, rng);
    EXPECT_EQ(partition_bits(balanced_partition(g, pairs, 9)), partition_bits(balanced_partition(g, pairs, 9)));
}

TEST(Partition, ImpossibleTargetRaises) {
    // Odd degree forces discrepancy at least one.
    const MultiGraph g = complete_graph(8);
    PartitionOptions options;
    options.target = 0;
    options.restarts = 2;
    try {
        balanced_partition(g, {}, 3, options);
        FAIL() << "expected PartitionError";
    } catch (const PartitionError& e) {
        EXPECT_GE(e.achieved(), 1);
    }
}

TEST(Partition, RejectsBadPairs) {
    const MultiGraph g = complete_graph(6);
    EXPECT_THROW(balanced_partition(g, {{0, 1}, {1, 2}}, 1), GraphError);
    EXPECT_THROW(balanced_partition(g, {{0, 0}}, 1), GraphError);
    EXPECT_THROW(balanced_partition(g, {{0, 9}}, 1), GraphError);
    EXPECT_THROW(balanced_partition(complete_graph(5), {}, 1), GraphError);
}

TEST(Partition, MakePartitionRecounts) {
    const MultiGraph g = cycle_graph(6);
    const std::vector<Side> side{Side::A, Side::A, Side::A, Side::B, Side::B, Side::B};
    const Partition p = make_partition(g, side);
    EXPECT_EQ(p.size_a, 3);
    EXPECT_EQ(p.deg_a[0], 1);
    EXPECT_EQ(p.deg_b[0], 1);
    EXPECT_EQ(p.deg_a[1], 2);
    EXPECT_EQ(p.discrepancy, 2);
    EXPECT_EQ(partition_bits(p), "000111");
    Partition broken = p;
    broken.deg_a[1] = 0;
    EXPECT_FALSE(partition_consistent(g, broken));
}
