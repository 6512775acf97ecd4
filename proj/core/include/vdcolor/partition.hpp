#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vdcolor/graph.hpp"

namespace vdcolor {

enum class Side : std::uint8_t { A = 0, B = 1 };

struct Partition {
    std::vector<Side> side;
    std::vector<int> deg_a;  // neighbors (with multiplicity) on side A
    std::vector<int> deg_b;
    int size_a = 0;
    int size_b = 0;
    int discrepancy = 0;          // max_v |deg_a(v) - deg_b(v)|
    std::uint64_t winning_seed = 0;
    int restarts_used = 0;
};

// Raised when no certified partition was found; carries the best discrepancy reached.
class PartitionError : public std::runtime_error {
public:
    PartitionError(const std::string& what, int achieved) : std::runtime_error(what), achieved_(achieved) {}
    int achieved() const noexcept { return achieved_; }

private:
    int achieved_;
};

struct PartitionOptions {
    int target = -1;           // -1: ceil((n/2)^(2/3))
    int restarts = 20;
    long long swaps = -1;      // per restart; -1: 10 n^2
};

int default_discrepancy_target(int n);

// Equal halves, each designated pair split across the sides, and per-vertex
// side-degree discrepancy within the target, certified by recount.
Partition balanced_partition(const MultiGraph& graph, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                             std::uint64_t seed, const PartitionOptions& options = {});

// Builds the cached side degrees for a given side assignment.
Partition make_partition(const MultiGraph& graph, const std::vector<Side>& side);

// Recounts everything from scratch and compares with the cached values.
bool partition_consistent(const MultiGraph& graph, const Partition& partition);

// One character per vertex: '0' for A, '1' for B.
std::string partition_bits(const Partition& partition);

}  // namespace vdcolor
