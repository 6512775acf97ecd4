#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "vdcolor/pipeline.hpp"

using namespace vdcolor;
using namespace testing_helpers;

namespace {

MultiGraph complete_minus_matching(int n) {
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!(u % 2 == 0 && v == u + 1)) g.add_edge(u, v);
    return g;
}

// Distinct per-vertex color sets, recounted without the library verifiers.
bool sets_distinct(const PartialColoring& c) {
    std::set<std::vector<Color>> seen;
    const MultiGraph& g = c.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<Color> s;
        for (const auto& inc : g.incident(v)) s.push_back(c.color(inc.edge));
        std::sort(s.begin(), s.end());
        if (!seen.insert(s).second) return false;
    }
    return true;
}

bool sums_distinct(const PartialColoring& c) {
    std::set<long long> seen;
    const MultiGraph& g = c.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        long long s = 0;
        for (const auto& inc : g.incident(v)) s += c.color(inc.edge);
        if (!seen.insert(s).second) return false;
    }
    return true;
}

std::set<Color> used(const PartialColoring& c) {
    const auto colors = c.colors();
    return {colors.begin(), colors.end()};
}

}  // namespace

TEST(Pipeline, VdOnCompleteMinusMatching) {
    const MultiGraph g = complete_minus_matching(20);
    const PipelineResult res = run_vd(g, 1);
    EXPECT_TRUE(res.coloring.is_total());
    EXPECT_TRUE(proper_recount(res.coloring));
    EXPECT_TRUE(sets_distinct(res.coloring));
    EXPECT_TRUE(res.report.verdict.vd);
    EXPECT_LE(*used(res.coloring).rbegin(), 20);
    EXPECT_EQ(res.report.d_star, 20);
}

TEST(Pipeline, SdOnK6UsesSevenColors) {
    const MultiGraph g = complete_graph(6);
    const PipelineResult res = run_sd(g, 1);
    EXPECT_TRUE(proper_recount(res.coloring));
    EXPECT_TRUE(sums_distinct(res.coloring));
    EXPECT_LE(used(res.coloring).size(), 7U);
    EXPECT_TRUE(res.report.sums_match);
}

TEST(Pipeline, SdSumsFollowClosedForm) {
    const MultiGraph g = random_regular(12, 9, 3);
    const PipelineResult res = run_sd(g, 1);
    EXPECT_TRUE(sums_distinct(res.coloring));
    EXPECT_EQ(res.report.palette_size, 11);
    EXPECT_EQ(color_sums(res.coloring), expected_vertex_sums(res.plan));
}

TEST(Pipeline, Deterministic) {
    const MultiGraph g = random_regular(24, 17, 8);
    PipelineOptions options;
    options.timings = false;
    const PipelineResult a = run_vd(g, 5, options);
    const PipelineResult b = run_vd(g, 5, options);
    EXPECT_EQ(a.coloring.colors(), b.coloring.colors());
    EXPECT_EQ(a.report.fallbacks, b.report.fallbacks);
}

TEST(Pipeline, RejectsInvalidInput) {
    EXPECT_THROW(run_vd(complete_graph(7), 1), PipelineError);
    EXPECT_THROW(run_vd(complete_graph(4), 1), PipelineError);
    MultiGraph irregular = complete_graph(8);
    irregular.add_edge(0, 1);
    EXPECT_THROW(run_vd(irregular, 1), PipelineError);
    EXPECT_THROW(run_sd(random_regular(12, 4, 1), 1), PipelineError);
}

TEST(Pipeline, FallbackOffEitherSucceedsCleanOrRaises) {
    const MultiGraph g = random_regular(30, 22, 4);
    PipelineOptions options;
    options.fallback = false;
    try {
        const PipelineResult res = run_sd(g, 2, options);
        EXPECT_TRUE(res.report.fallbacks.empty());
        EXPECT_TRUE(res.report.verdict.sd);
    } catch (const PipelineError& e) {
        EXPECT_NE(std::string(e.what()).find("fallbacks disabled"), std::string::npos);
    }
}

TEST(Pipeline, ReportInvariants) {
    Rng rng(71);
    for (int round = 0; round < 8; ++round) {
        const int n = 12 + 2 * static_cast<int>(rng.below(10));
        const int d = (2 * n + 2) / 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 3 - 1)));
        if (d >= n) continue;
        const MultiGraph g = random_regular(n, d, rng.next());
        const Mode mode = round % 2 ? Mode::Sd : Mode::Vd;
        const PipelineResult res = run(mode, g, rng.next());
        const PipelineReport& rep = res.report;
        ASSERT_NE(rep.step("step1_partition"), nullptr);
        EXPECT_TRUE(rep.step("step1_partition")->bound("halves_equal")->ok);
        const StepReport* total = rep.step("augmented_total");
        ASSERT_NE(total, nullptr);
        EXPECT_TRUE(total->all_ok());
        const StepReport* out = rep.step("step6_output");
        ASSERT_NE(out, nullptr);
        EXPECT_TRUE(out->all_ok());
        EXPECT_EQ(rep.flagged("global"), rep.step("global_repair") != nullptr);
        if (const StepReport* s3 = rep.step("step3_saturate"); s3 && !rep.flagged("step3")) {
            EXPECT_TRUE(s3->bound("c2_classes_imperfect")->ok);
        }
        EXPECT_TRUE(mode == Mode::Vd ? rep.verdict.vd : rep.verdict.sd);
        EXPECT_TRUE(mode == Mode::Vd ? sets_distinct(res.coloring) : sums_distinct(res.coloring));
        EXPECT_EQ(static_cast<int>(used(res.coloring).size()) + static_cast<int>(rep.unused_colors.size()), d + 2);
    }
}

TEST(Pipeline, PerfectClassCheck) {
    const MultiGraph g = cycle_graph(4);
    PartialColoring c(g, 2);
    c.assign(0, 1);
    c.assign(2, 1);
    c.assign(1, 2);
    EXPECT_TRUE(is_perfect_class(c, 1));
    EXPECT_FALSE(is_perfect_class(c, 2));
}
