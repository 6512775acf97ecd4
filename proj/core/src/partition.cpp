#include "vdcolor/partition.hpp"

#include <algorithm>
#include <cstdlib>

#include "vdcolor/arith.hpp"
#include "vdcolor/rng.hpp"

namespace vdcolor {

int default_discrepancy_target(int n) { return static_cast<int>(ceil_pow_2_3(n / 2)); }

Partition make_partition(const MultiGraph& graph, const std::vector<Side>& side) {
    const int n = graph.vertex_count();
    Partition p;
    p.side = side;
    p.deg_a.assign(static_cast<std::size_t>(n), 0);
    p.deg_b.assign(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v) {
        (side[v] == Side::A ? p.size_a : p.size_b) += 1;
        for (const auto& inc : graph.incident(v)) (side[inc.neighbor] == Side::A ? p.deg_a[v] : p.deg_b[v]) += 1;
        p.discrepancy = std::max(p.discrepancy, std::abs(p.deg_a[v] - p.deg_b[v]));
    }
    return p;
}

bool partition_consistent(const MultiGraph& graph, const Partition& partition) {
    const Partition fresh = make_partition(graph, partition.side);
    return fresh.deg_a == partition.deg_a && fresh.deg_b == partition.deg_b && fresh.size_a == partition.size_a &&
           fresh.size_b == partition.size_b && fresh.discrepancy == partition.discrepancy;
}

std::string partition_bits(const Partition& partition) {
    std::string out;
    out.reserve(partition.side.size());
    for (Side s : partition.side) out.push_back(s == Side::A ? '0' : '1');
    return out;
}

namespace {

struct Climber {
    const std::vector<std::vector<int>>& mult;
    const std::vector<int>& partner;
    std::vector<Side> side;
    std::vector<int> disc;  // deg_a - deg_b

    std::pair<int, long long> score() const {
        int worst = 0;
        long long squares = 0;
        for (int d : disc) {
            worst = std::max(worst, std::abs(d));
            squares += static_cast<long long>(d) * d;
        }
        return {worst, squares};
    }

    std::pair<int, long long> score_after(VertexId x, VertexId y) const {
        int worst = 0;
        long long squares = 0;
        for (std::size_t w = 0; w < disc.size(); ++w) {
            const int d = disc[w] + 2 * mult[w][y] - 2 * mult[w][x];
            worst = std::max(worst, std::abs(d));
            squares += static_cast<long long>(d) * d;
        }
        return {worst, squares};
    }

    // x moves A -> B, y moves B -> A.
    void apply(VertexId x, VertexId y) {
        for (std::size_t w = 0; w < disc.size(); ++w) disc[w] += 2 * mult[w][y] - 2 * mult[w][x];
        side[x] = Side::B;
        side[y] = Side::A;
    }

    bool allowed(VertexId x, VertexId y) const {
        if (partner[x] < 0 && partner[y] < 0) return true;
        return partner[x] == y;
    }
};

}  // namespace

Partition balanced_partition(const MultiGraph& graph, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                             std::uint64_t seed, const PartitionOptions& options) {
    const int n = graph.vertex_count();
    if (n % 2 != 0) throw GraphError("balanced_partition requires an even number of vertices");
    std::vector<int> partner(static_cast<std::size_t>(n), -1);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw GraphError("pair vertex out of range");
        if (a == b || partner[a] >= 0 || partner[b] >= 0) throw GraphError("designated pairs must be disjoint");
        partner[a] = b;
        partner[b] = a;
    }
    std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : graph.edges()) {
        ++mult[u][v];
        ++mult[v][u];
    }
    const int target = options.target >= 0 ? options.target : default_discrepancy_target(n);
    const long long swaps = options.swaps >= 0 ? options.swaps : 10LL * n * n;
    int best = -1;

    for (int restart = 0; restart < std::max(options.restarts, 1); ++restart) {
        const std::uint64_t run_seed = mix_seed(seed, static_cast<std::uint64_t>(restart));
        Rng rng(run_seed);
        std::vector<Side> side(static_cast<std::size_t>(n), Side::B);
        int on_a = 0;
        for (auto [a, b] : pairs) {
            const bool flip = rng.below(2) == 1;
            side[flip ? b : a] = Side::A;
            ++on_a;
        }
        std::vector<VertexId> free;
        for (VertexId v = 0; v < n; ++v)
            if (partner[v] < 0) free.push_back(v);
        rng.shuffle(free);
        for (VertexId v : free) {
            if (on_a == n / 2) break;
            side[v] = Side::A;
            ++on_a;
        }

        Partition start = make_partition(graph, side);
        Climber climb{mult, partner, side, {}};
        for (VertexId v = 0; v < n; ++v) climb.disc.push_back(start.deg_a[v] - start.deg_b[v]);
        auto current = climb.score();
        for (long long step = 0; step < swaps && current.first > target; ++step) {
            auto best_score = current;
            VertexId bx = -1, by = -1;
            for (VertexId x = 0; x < n; ++x) {
                if (climb.side[x] != Side::A) continue;
                for (VertexId y = 0; y < n; ++y) {
                    if (climb.side[y] != Side::B || !climb.allowed(x, y)) continue;
                    const auto s = climb.score_after(x, y);
                    if (s < best_score) {
                        best_score = s;
                        bx = x;
                        by = y;
                    }
                }
            }
            if (bx < 0) break;
            climb.apply(bx, by);
            current = best_score;
        }
        Partition result = make_partition(graph, climb.side);
        best = best < 0 ? result.discrepancy : std::min(best, result.discrepancy);
        if (result.discrepancy <= target && partition_consistent(graph, result)) {
            result.winning_seed = run_seed;
            result.restarts_used = restart + 1;
            return result;
        }
    }
    throw PartitionError("no partition within discrepancy " + std::to_string(target) + " (best " +
                             std::to_string(best) + ")",
                         best);
}

}  // namespace vdcolor
