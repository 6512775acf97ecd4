#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vdcolor/coloring.hpp"
#include "vdcolor/design.hpp"
#include "vdcolor/graph.hpp"
#include "vdcolor/partition.hpp"

namespace vdcolor {

// Invalid input, or a step that failed while fallbacks were disabled.
class PipelineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One logged inequality: measured <relation> required.
struct BoundCheck {
    std::string name;
    std::string relation;  // "<", "<=", "==", ">="
    long long required = 0;
    long long measured = 0;
    bool ok = false;
};

struct StepReport {
    std::string name;
    std::vector<BoundCheck> bounds;
    std::vector<std::pair<std::string, long long>> counters;
    double millis = 0.0;

    bool all_ok() const;
    const BoundCheck* bound(const std::string& name) const;
    long long counter(const std::string& name, long long fallback = -1) const;
};

struct Verdict {
    bool proper = false;
    bool vd = false;
    bool sd = false;
};

struct PipelineReport {
    Mode mode = Mode::Vd;
    int n = 0;
    int d = 0;
    int d_star = 0;
    int half = 0;  // n/2, the scale of the fractional-power bounds
    std::uint64_t seed = 0;
    double epsilon = 0.05;
    bool fallback_enabled = true;
    bool timings = true;

    std::vector<StepReport> steps;
    std::vector<std::string> fallbacks;
    // Step 3 exchange lengths (5 or 7 edges) and how often each occurred.
    std::map<int, long long> path_lengths;

    Verdict verdict;
    bool sums_match = true;  // sd: final sums equal the closed-form prediction
    int palette_size = 0;
    std::vector<Color> unused_colors;  // within [1, d+2]

    const StepReport* step(const std::string& name) const;
    bool flagged(const std::string& prefix) const;
};

struct PipelineOptions {
    double epsilon = 0.05;
    bool fallback = true;
    bool timings = true;
};

struct PipelineResult {
    // Final coloring of the input graph with palette [1, d+2]. It refers to
    // the caller's graph, which must outlive it.
    PartialColoring coloring;
    PrecolorPlan plan;
    PipelineReport report;
};

// Working state shared by Steps 2-5. The coloring lives on the augmented
// graph and uses the global color names in [1, d+2].
struct StepState {
    std::unique_ptr<MultiGraph> g_star;
    std::unique_ptr<PartialColoring> coloring;
    std::vector<char> is_q;
    std::vector<Side> side;
    std::vector<Color> palette;  // the d* admissible colors, ascending
    std::vector<Color> c1, c2, c3;
    int d_star = 0;
    int half = 0;
    int k = 0;
    int ell = 0;
    std::uint64_t seed = 0;
    bool fallback = true;
    PipelineReport* report = nullptr;
};

// Step 3: every color of C2 becomes a perfect matching of the augmented graph.
// Returns false if some color could not be completed.
bool step3_saturate(StepState& state, StepReport& out);
// Step 4: C3 colors R_A and R_B equitably, then each C3 class is completed
// across the cut by a perfect matching.
bool step4_complete(StepState& state, StepReport& out);
// Step 5: the uncolored remainder is colored with the leftover palette.
bool step5_finish(StepState& state, StepReport& out);

// True when color c forms a perfect matching of the coloring's graph.
bool is_perfect_class(const PartialColoring& coloring, Color c);

PipelineResult run_vd(const MultiGraph& graph, std::uint64_t seed, const PipelineOptions& options = {});
PipelineResult run_sd(const MultiGraph& graph, std::uint64_t seed, const PipelineOptions& options = {});
PipelineResult run(Mode mode, const MultiGraph& graph, std::uint64_t seed, const PipelineOptions& options = {});

}  // namespace vdcolor
