#include "vdcolor/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "vdcolor/arith.hpp"
#include "vdcolor/balance.hpp"
#include "vdcolor/matching.hpp"
#include "vdcolor/multifan.hpp"
#include "vdcolor/rng.hpp"

namespace vdcolor {

bool StepReport::all_ok() const {
    return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.ok; });
}

const BoundCheck* StepReport::bound(const std::string& key) const {
    for (const auto& b : bounds)
        if (b.name == key) return &b;
    return nullptr;
}

long long StepReport::counter(const std::string& key, long long fallback) const {
    for (const auto& [k, v] : counters)
        if (k == key) return v;
    return fallback;
}

const StepReport* PipelineReport::step(const std::string& key) const {
    for (const auto& s : steps)
        if (s.name == key) return &s;
    return nullptr;
}

bool PipelineReport::flagged(const std::string& prefix) const {
    return std::any_of(fallbacks.begin(), fallbacks.end(),
                       [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

bool is_perfect_class(const PartialColoring& coloring, Color c) {
    const MultiGraph& g = coloring.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (coloring.edge_with(v, c) < 0) return false;
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

void check(StepReport& step, std::string name, const std::string& relation, long long measured, long long required) {
    bool ok = false;
    if (relation == "<") ok = measured < required;
    else if (relation == "<=") ok = measured <= required;
    else if (relation == "==") ok = measured == required;
    else if (relation == ">=") ok = measured >= required;
    step.bounds.push_back({std::move(name), relation, required, measured, ok});
}

void count(StepReport& step, std::string name, long long value) { step.counters.emplace_back(std::move(name), value); }

class Timer {
public:
    Timer(StepReport& step, bool enabled) : step_(step), enabled_(enabled), start_(Clock::now()) {}
    ~Timer() {
        if (enabled_)
            step_.millis = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    }

private:
    StepReport& step_;
    bool enabled_;
    Clock::time_point start_;
};

void flag(StepState& state, const std::string& what) {
    if (!state.fallback) throw PipelineError(what + " (fallbacks disabled)");
    state.report->fallbacks.push_back(what);
}

// Smallest t with 2t >= d* + m^(2/3), then + 50.
int asymptotic_k(int d_star, int half) {
    long long t = 0;
    auto enough = [&](long long v) {
        const long long x = 2 * v - d_star;
        return x >= 0 && static_cast<Int128>(x) * x * x >= static_cast<Int128>(half) * half;
    };
    while (!enough(t)) ++t;
    return static_cast<int>(t) + 50;
}

enum : char { kCross = 0, kInsideA = 1, kInsideB = 2 };

char edge_kind(const StepState& s, EdgeId e) {
    const auto [u, v] = s.g_star->endpoints(e);
    if (s.side[u] != s.side[v]) return kCross;
    return s.side[u] == Side::A ? kInsideA : kInsideB;
}

// Uncolored inside edges: R_A and R_B.
bool in_r(const StepState& s, EdgeId e) { return !s.coloring->colored(e) && edge_kind(s, e) != kCross; }

std::vector<int> r_degrees(const StepState& s) {
    std::vector<int> deg(static_cast<std::size_t>(s.g_star->vertex_count()), 0);
    for (EdgeId e = 0; e < s.g_star->edge_count(); ++e) {
        if (!in_r(s, e)) continue;
        const auto [u, v] = s.g_star->endpoints(e);
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

// Recolors color c by a maximum matching of the general graph on edges that
// are uncolored or already c, keeping Q's c-edges and their endpoints fixed.
bool matching_repair(StepState& s, Color c) {
    const MultiGraph& g = *s.g_star;
    PartialColoring& col = *s.coloring;
    std::vector<char> blocked(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (s.is_q[e] && col.color(e) == c) {
            blocked[g.endpoints(e).first] = blocked[g.endpoints(e).second] = 1;
        }
    }
    std::vector<char> allowed(static_cast<std::size_t>(g.edge_count()), 0);
    std::vector<EdgeId> initial;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (s.is_q[e]) continue;
        const auto [u, v] = g.endpoints(e);
        if (blocked[u] || blocked[v]) continue;
        if (!col.colored(e) || col.color(e) == c) allowed[e] = 1;
        if (col.color(e) == c) initial.push_back(e);
    }
    const auto matching = maximum_matching(g, allowed, initial);
    int covered = 0;
    for (char b : blocked) covered += b;
    if (2 * static_cast<int>(matching.size()) + covered != g.vertex_count()) return false;
    std::vector<char> keep(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : matching) keep[e] = 1;
    for (EdgeId e : initial)
        if (!keep[e]) col.unassign(e);
    for (EdgeId e : matching)
        if (col.color(e) != c) col.assign(e, c);
    return true;
}

constexpr int kRepairAttempts = 2000;

// Completes the coloring of the augmented graph over its d* palette by a
// randomized Kempe walk, first from the current state, then from phi0 alone.
// The walk either finishes quickly or stalls, so attempts are short and many.
bool global_repair(StepState& s, const std::vector<EdgeId>& q_edges, const std::vector<Color>& phi0) {
    const MultiGraph& g = *s.g_star;
    std::vector<int> local(static_cast<std::size_t>(s.palette.back() + 1), 0);
    for (std::size_t i = 0; i < s.palette.size(); ++i) local[s.palette[i]] = static_cast<int>(i) + 1;
    const long long budget = 50LL * (g.edge_count() + 1);

    for (int attempt = 0; attempt < kRepairAttempts; ++attempt) {
        PartialColoring work(g, s.d_star);
        if (attempt == 0) {
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (s.coloring->colored(e)) work.assign(e, local[s.coloring->color(e)]);
        } else {
            for (std::size_t i = 0; i < q_edges.size(); ++i) work.assign(q_edges[i], local[phi0[i]]);
        }
        for (EdgeId e : q_edges) work.freeze(e);
        if (!complete_coloring(work, mix_seed(s.seed, 900 + static_cast<std::uint64_t>(attempt)), budget)) continue;
        auto fresh = std::make_unique<PartialColoring>(g, s.coloring->palette());
        for (EdgeId e = 0; e < g.edge_count(); ++e) fresh->assign(e, s.palette[work.color(e) - 1]);
        for (EdgeId e : q_edges) fresh->freeze(e);
        s.coloring = std::move(fresh);
        return true;
    }
    return false;
}

// ---- Step 3 -----------------------------------------------------------------

struct SaturationContext {
    StepState& s;
    Color alpha;
    std::vector<char> in_v_alpha;
    std::vector<int> r_deg;

    VertexId partner(VertexId v) const {
        const EdgeId e = s.coloring->edge_with(v, alpha);
        return e < 0 ? -1 : s.g_star->other(e, v);
    }
    bool degree_ok(VertexId v) const { return below_pow_5_6(r_deg[v] + 1, 1, s.half); }
    // w carries a good alpha-edge inside its own side, both ends outside V_alpha.
    bool good_at(VertexId w) const {
        if (in_v_alpha[w]) return false;
        const EdgeId e = s.coloring->edge_with(w, alpha);
        if (e < 0 || s.is_q[e]) return false;
        const VertexId x = s.g_star->other(e, w);
        return s.side[x] == s.side[w] && !in_v_alpha[x] && degree_ok(w) && degree_ok(x);
    }
    EdgeId uncolored_edge(VertexId v, VertexId w) const {
        for (const auto& inc : s.g_star->incident(v))
            if (inc.neighbor == w && !s.coloring->colored(inc.edge) && !s.is_q[inc.edge]) return inc.edge;
        return -1;
    }
    // N1(v): vertices across the cut joined to v by an uncolored edge and
    // incident to a good alpha-edge. Candidates whose alpha-edge would load R
    // the least come first, ties by id.
    std::vector<VertexId> n1(VertexId v) const {
        std::vector<std::pair<int, VertexId>> keyed;
        for (const auto& inc : s.g_star->incident(v)) {
            const VertexId w = inc.neighbor;
            if (s.side[w] == s.side[v] || s.coloring->colored(inc.edge) || s.is_q[inc.edge]) continue;
            if (good_at(w)) keyed.emplace_back(std::max(r_deg[w], r_deg[partner(w)]), w);
        }
        std::sort(keyed.begin(), keyed.end());
        keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
        std::vector<VertexId> out;
        for (const auto& item : keyed) out.push_back(item.second);
        return out;
    }
    std::vector<VertexId> n2(VertexId v) const {
        std::vector<VertexId> out;
        for (VertexId w : n1(v)) out.push_back(partner(w));
        std::sort(out.begin(), out.end());
        return out;
    }

    void retire(EdgeId e) {
        const auto [x, y] = s.g_star->endpoints(e);
        s.coloring->unassign(e);
        if (s.side[x] == s.side[y]) {
            ++r_deg[x];
            ++r_deg[y];
        }
    }

    // Colors the uncolored links with alpha and uncolors the alpha links along
    // a path a = p0, p1, ..., pL = b whose even steps are uncolored.
    void apply(const std::vector<VertexId>& path) {
        std::vector<EdgeId> links;
        for (std::size_t i = 0; i + 1 < path.size(); i += 2) links.push_back(uncolored_edge(path[i], path[i + 1]));
        for (std::size_t i = 1; i + 1 < path.size(); i += 2) retire(s.coloring->edge_with(path[i], alpha));
        for (EdgeId e : links) s.coloring->assign(e, alpha);
    }

    bool exchange_across(VertexId a, VertexId b) {
        const auto n2a = n2(a);
        for (VertexId a1 : n1(b)) {
            const VertexId a2 = partner(a1);
            for (VertexId b2 : n1(a2)) {
                if (!std::binary_search(n2a.begin(), n2a.end(), b2)) continue;
                const VertexId b1 = partner(b2);
                apply({a, b1, b2, a2, a1, b});
                return true;
            }
        }
        return false;
    }

    bool exchange_same_side(VertexId a, VertexId a_star) {
        const auto n2a = n2(a);
        for (VertexId b1s : n1(a_star)) {
            const VertexId b2s = partner(b1s);
            for (VertexId a2s : n1(b2s)) {
                const VertexId a2 = partner(a2s);
                for (VertexId b2 : n1(a2)) {
                    if (b2 == b1s || b2 == b2s) continue;
                    if (!std::binary_search(n2a.begin(), n2a.end(), b2)) continue;
                    const VertexId b1 = partner(b2);
                    apply({a, b1, b2, a2, a2s, b2s, b1s, a_star});
                    return true;
                }
            }
        }
        return false;
    }
};

long long colored_cross_max(const StepState& s) {
    long long best = 0;
    for (VertexId v = 0; v < s.g_star->vertex_count(); ++v) {
        long long c = 0;
        for (const auto& inc : s.g_star->incident(v))
            c += s.side[inc.neighbor] != s.side[v] && s.coloring->colored(inc.edge);
        best = std::max(best, c);
    }
    return best;
}

}  // namespace

bool step3_saturate(StepState& s, StepReport& out) {
    const MultiGraph& g = *s.g_star;
    const int n = g.vertex_count();
    long long pairs_total = 0, repaired = 0, max_r_deg = 0;
    bool ok = true;

    for (Color alpha : s.c2) {
        SaturationContext ctx{s, alpha, std::vector<char>(static_cast<std::size_t>(n), 0), r_degrees(s)};
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (s.is_q[e] && s.coloring->color(e) == alpha) {
                ctx.in_v_alpha[g.endpoints(e).first] = ctx.in_v_alpha[g.endpoints(e).second] = 1;
            }
        }
        std::vector<VertexId> miss_a, miss_b;
        for (VertexId v = 0; v < n; ++v)
            if (s.coloring->misses(v, alpha)) (s.side[v] == Side::A ? miss_a : miss_b).push_back(v);

        std::vector<std::pair<VertexId, VertexId>> pairs;
        const std::size_t across = std::min(miss_a.size(), miss_b.size());
        for (std::size_t i = 0; i < across; ++i) pairs.emplace_back(miss_a[i], miss_b[i]);
        const auto& rest = miss_a.size() > across ? miss_a : miss_b;
        for (std::size_t i = across; i + 1 < rest.size(); i += 2) pairs.emplace_back(rest[i], rest[i + 1]);
        if ((rest.size() - across) % 2 != 0) ok = false;  // parity broken, cannot happen for a total start

        bool stuck = false;
        for (auto [x, y] : pairs) {
            ++pairs_total;
            const bool across_cut = s.side[x] != s.side[y];
            const bool done = across_cut ? ctx.exchange_across(x, y) : ctx.exchange_same_side(x, y);
            if (!done) {
                stuck = true;
                break;
            }
            ++s.report->path_lengths[across_cut ? 5 : 7];
        }
        if (stuck) {
            flag(s, "step3.matching-repair color " + std::to_string(alpha));
            ++repaired;
            if (!matching_repair(s, alpha)) {
                ok = false;
                break;
            }
        }
        for (int d : r_degrees(s)) max_r_deg = std::max<long long>(max_r_deg, d);
    }

    long long r_a = 0, r_b = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!in_r(s, e)) continue;
        (edge_kind(s, e) == kInsideA ? r_a : r_b) += 1;
    }
    count(out, "exchanges", pairs_total);
    check(out, "mcc_pairs", "<", pairs_total, ceil_scaled_pow_5_3(2, s.half));
    count(out, "colors_repaired", repaired);
    count(out, "r_a_edges", r_a);
    count(out, "r_b_edges", r_b);
    check(out, "r_sides_equal", "==", r_a, r_b);
    check(out, "r_size", "<", std::max(r_a, r_b), ceil_scaled_pow_5_3(4, s.half));
    check(out, "r_max_degree", "<", max_r_deg, ceil_scaled_pow_5_6(1, s.half));
    check(out, "h_colored_degree", "<", colored_cross_max(s), ceil_scaled_pow_5_6(2, s.half));
    long long imperfect = 0;
    for (Color c : s.c2) imperfect += !is_perfect_class(*s.coloring, c);
    check(out, "c2_classes_imperfect", "==", imperfect, 0);
    return ok && imperfect == 0;
}

// ---- Step 4 -----------------------------------------------------------------

bool step4_complete(StepState& s, StepReport& out) {
    const MultiGraph& g = *s.g_star;
    const int n = g.vertex_count();
    const auto r_deg = r_degrees(s);
    const int r_max = r_deg.empty() ? 0 : *std::max_element(r_deg.begin(), r_deg.end());
    const int remaining = s.d_star - s.k;
    const int ell_asymptotic = static_cast<int>(ceil_pow_5_6(s.half)) + 1;

    s.ell = ell_asymptotic;
    if (ell_asymptotic > remaining || ell_asymptotic < r_max) {
        s.ell = std::min(remaining, r_max + 1);
        flag(s, "step4.desk-ell " + std::to_string(s.ell) + " instead of " + std::to_string(ell_asymptotic));
    }
    count(out, "ell_asymptotic", ell_asymptotic);
    count(out, "ell", s.ell);
    count(out, "r_max_degree", r_max);
    check(out, "ell_fits", "<=", s.ell, remaining);
    check(out, "ell_covers_r", ">=", s.ell, r_max);
    if (s.ell > remaining || s.ell < r_max) return false;

    s.c3.clear();
    for (Color c : s.palette) {
        if (static_cast<int>(s.c3.size()) == s.ell) break;
        if (!std::binary_search(s.c2.begin(), s.c2.end(), c)) s.c3.push_back(c);
    }

    // Equitable colorings of R_A and R_B, classes paired by size rank.
    long long mismatched = 0;
    if (s.ell > 0) {
        std::vector<std::vector<std::vector<EdgeId>>> ranked(2);
        for (int sideno = 0; sideno < 2; ++sideno) {
            std::vector<bool> keep(static_cast<std::size_t>(g.edge_count()), false);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                keep[e] = in_r(s, e) && edge_kind(s, e) == (sideno == 0 ? kInsideA : kInsideB);
            const EdgeSubgraph sub = edge_subgraph(g, keep);
            std::optional<PartialColoring> eq;
            try {
                eq.emplace(equitable_edge_coloring(sub.graph, s.ell, mix_seed(s.seed, 40 + sideno)));
            } catch (const ColoringError&) {
                check(out, "equitable_coloring_found", "==", 0, 1);
                return false;
            }
            std::vector<std::vector<EdgeId>> classes(static_cast<std::size_t>(s.ell));
            for (EdgeId e = 0; e < sub.graph.edge_count(); ++e)
                classes[eq->color(e) - 1].push_back(sub.parent_edge[e]);
            std::stable_sort(classes.begin(), classes.end(),
                             [](const auto& x, const auto& y) { return x.size() > y.size(); });
            ranked[sideno] = std::move(classes);
        }
        long long largest = 0;
        for (int r = 0; r < s.ell; ++r) {
            largest = std::max<long long>(largest, static_cast<long long>(ranked[0][r].size()));
            mismatched += ranked[0][r].size() != ranked[1][r].size();
            for (int sideno = 0; sideno < 2; ++sideno)
                for (EdgeId e : ranked[sideno][r]) s.coloring->assign(e, s.c3[r]);
        }
        check(out, "c3_class_in_r", "<", largest, ceil_scaled_pow_5_6(4, s.half) + 1);
    }
    check(out, "paired_class_size_mismatch", "==", mismatched, 0);

    long long hall_failures = 0, largest_violator = 0;
    bool ok = true;
    for (Color alpha : s.c3) {
        std::vector<bool> keep(static_cast<std::size_t>(g.edge_count()), false);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            keep[e] = !s.coloring->colored(e) && !s.is_q[e] && edge_kind(s, e) == kCross;
        const EdgeSubgraph h = edge_subgraph(g, keep);
        std::vector<VertexId> left, right;
        for (VertexId v = 0; v < n; ++v)
            if (s.coloring->misses(v, alpha)) (s.side[v] == Side::A ? left : right).push_back(v);
        if (left.size() != right.size()) {
            ok = false;
            break;
        }
        const HallResult hr = hall_matching(h.graph, left, right);
        if (hr.perfect) {
            for (EdgeId e : hr.matching) s.coloring->assign(h.parent_edge[e], alpha);
            continue;
        }
        ++hall_failures;
        largest_violator = std::max<long long>(largest_violator, static_cast<long long>(hr.violator.size()));
        flag(s, "step4.matching-repair color " + std::to_string(alpha));
        if (!matching_repair(s, alpha)) {
            ok = false;
            break;
        }
    }
    count(out, "hall_failures", hall_failures);
    count(out, "largest_hall_violator", largest_violator);
    long long imperfect = 0;
    for (Color c : s.c2) imperfect += !is_perfect_class(*s.coloring, c);
    for (Color c : s.c3) imperfect += !is_perfect_class(*s.coloring, c);
    check(out, "c2_c3_classes_imperfect", "==", imperfect, 0);
    return ok && imperfect == 0 && mismatched == 0;
}

// ---- Step 5 -----------------------------------------------------------------

bool step5_finish(StepState& s, StepReport& out) {
    const MultiGraph& g = *s.g_star;
    std::vector<Color> leftover;
    for (Color c : s.palette)
        if (!std::binary_search(s.c2.begin(), s.c2.end(), c) && std::find(s.c3.begin(), s.c3.end(), c) == s.c3.end())
            leftover.push_back(c);

    std::vector<bool> keep(static_cast<std::size_t>(g.edge_count()), false);
    for (EdgeId e = 0; e < g.edge_count(); ++e) keep[e] = !s.coloring->colored(e);
    const EdgeSubgraph rest = edge_subgraph(g, keep);
    const int expected = static_cast<int>(leftover.size());
    const bool regular = rest.graph.min_degree() == expected && rest.graph.max_degree() == expected;
    check(out, "remainder_regular_degree", "==", regular ? expected : -1, expected);
    bool bipartite = true;
    try {
        (void)bipartition(rest.graph);
    } catch (const ColoringError&) {
        bipartite = false;
    }
    check(out, "remainder_bipartite", "==", bipartite, 1);
    if (!regular || !bipartite) return false;

    if (rest.graph.edge_count() > 0) {
        const PartialColoring kc = konig_color(rest.graph);
        for (EdgeId e = 0; e < rest.graph.edge_count(); ++e)
            s.coloring->assign(rest.parent_edge[e], leftover[kc.color(e) - 1]);
    }
    count(out, "remainder_edges", rest.graph.edge_count());
    return true;
}

// ---- driver -----------------------------------------------------------------

namespace {

std::vector<Color> used_colors(const PartialColoring& coloring) {
    std::set<Color> used;
    for (EdgeId e = 0; e < coloring.graph().edge_count(); ++e)
        if (coloring.colored(e)) used.insert(coloring.color(e));
    return {used.begin(), used.end()};
}

void validate_input(const MultiGraph& graph) {
    const int n = graph.vertex_count();
    if (n % 2 != 0) throw PipelineError("the input must have an even number of vertices, got " + std::to_string(n));
    if (!graph.is_regular()) throw PipelineError("the input graph is not regular");
    if (!graph.is_simple()) throw PipelineError("the input graph has parallel edges");
}

StepReport& new_step(PipelineReport& report, const std::string& name) {
    report.steps.push_back({name, {}, {}, 0.0});
    return report.steps.back();
}

}  // namespace

PipelineResult run(Mode mode, const MultiGraph& graph, std::uint64_t seed, const PipelineOptions& options) {
    validate_input(graph);
    const int n = graph.vertex_count();
    const int d = graph.max_degree();

    PipelineReport report;
    report.mode = mode;
    report.n = n;
    report.d = d;
    report.half = n / 2;
    report.seed = seed;
    report.epsilon = options.epsilon;
    report.fallback_enabled = options.fallback;
    report.timings = options.timings;

    StepState s;
    s.seed = seed;
    s.fallback = options.fallback;
    s.report = &report;
    s.half = n / 2;

    {
        StepReport& pre = new_step(report, "preconditions");
        const long long dense = static_cast<long long>(std::ceil((1.0 + options.epsilon) * n / 2.0 - 1e-9));
        check(pre, "degree_dense", ">=", d, dense);
        check(pre, "degree_two_thirds", ">=", 3LL * d, 2LL * n);
        if (mode == Mode::Sd && 3 * d < 2 * n)
            throw PipelineError("sum-distinguishing mode needs 3d >= 2n, got d=" + std::to_string(d));
    }

    // Design: Q, phi0 and the augmented graph.
    PrecolorPlan plan;
    {
        StepReport& step = new_step(report, "design");
        Timer timer(step, options.timings);
        try {
            if (mode == Mode::Vd) {
                const CycleCover cover = build_Q_vd(n);
                try {
                    plan = precolor_vd(cover, d, false);
                } catch (const DesignError&) {
                    flag(s, "design.compact-remainder");
                    plan = precolor_vd(cover, d, true);
                }
                s.g_star = std::make_unique<MultiGraph>(union_with(graph, plan.q_pairs));
                plan.q_edges.clear();
                for (std::size_t i = 0; i < plan.q_pairs.size(); ++i)
                    plan.q_edges.push_back(graph.edge_count() + static_cast<EdgeId>(i));
                s.d_star = d + 2;
                for (Color c = 1; c <= d + 2; ++c) s.palette.push_back(c);
            } else {
                plan = build_Q_sd(graph, d, seed);
                precolor_sd(plan);
                s.g_star = std::make_unique<MultiGraph>(graph);
                s.d_star = d;
                for (Color c = 1; c <= d + 2; ++c)
                    if (std::find(plan.c0.begin(), plan.c0.end(), c) == plan.c0.end()) s.palette.push_back(c);
            }
        } catch (const DesignError& e) {
            throw PipelineError(std::string("design failed: ") + e.what());
        }
        report.d_star = s.d_star;
        s.c1 = plan.c1;
        s.is_q.assign(static_cast<std::size_t>(s.g_star->edge_count()), 0);
        for (EdgeId e : plan.q_edges) s.is_q[e] = 1;

        std::map<Color, int> uses;
        for (Color c : plan.phi0) ++uses[c];
        int mult = 0;
        for (auto [c, k] : uses) mult = std::max(mult, k);
        count(step, "q_edges", static_cast<long long>(plan.q_edges.size()));
        count(step, "q", plan.q);
        count(step, "r", plan.r);
        count(step, "c1_size", static_cast<long long>(s.c1.size()));
        count(step, "max_color_multiplicity", mult);
        check(step, "augmented_regular_degree", "==", s.g_star->is_regular() ? s.g_star->max_degree() : -1, s.d_star);
        check(step, "palette_size", "==", static_cast<long long>(s.palette.size()), s.d_star);
    }

    // Step 1.
    {
        StepReport& step = new_step(report, "step1_partition");
        Timer timer(step, options.timings);
        const int target = default_discrepancy_target(n);
        Partition part;
        try {
            part = balanced_partition(*s.g_star, {}, mix_seed(seed, 1));
        } catch (const PartitionError& e) {
            flag(s, "step1.relaxed-discrepancy");
            PartitionOptions relaxed;
            relaxed.target = e.achieved();
            part = balanced_partition(*s.g_star, {}, mix_seed(seed, 1), relaxed);
        }
        s.side = part.side;
        count(step, "size_a", part.size_a);
        count(step, "size_b", part.size_b);
        count(step, "restarts", part.restarts_used);
        check(step, "halves_equal", "==", part.size_a, part.size_b);
        check(step, "discrepancy", "<=", part.discrepancy, target);
    }

    s.coloring = std::make_unique<PartialColoring>(*s.g_star, d + 2);
    bool need_global = false;

    // Step 2.
    {
        StepReport& step = new_step(report, "step2_inside");
        Timer timer(step, options.timings);
        const MultiGraph& g = *s.g_star;
        std::vector<bool> keep(static_cast<std::size_t>(g.edge_count()), false);
        for (EdgeId e = 0; e < g.edge_count(); ++e) keep[e] = s.is_q[e] || edge_kind(s, e) != kCross;
        const EdgeSubgraph sub = edge_subgraph(g, keep);
        std::vector<EdgeId> q_local;
        for (EdgeId e : plan.q_edges) q_local.push_back(sub.local_edge[e]);

        const int k_asymptotic = asymptotic_k(s.d_star, s.half);
        const int inner_delta = sub.graph.max_degree();
        int k = k_asymptotic;
        if (k_asymptotic > s.d_star) {
            k = std::max(static_cast<int>(s.c1.size()), inner_delta + 1);
            k = std::min(k, s.d_star);
            flag(s, "step2.desk-palette " + std::to_string(k) + " instead of " + std::to_string(k_asymptotic));
        }
        count(step, "k_asymptotic", k_asymptotic);
        count(step, "inner_max_degree", inner_delta);

        std::optional<Extension> ext;
        std::vector<Color> c2;
        for (; k <= s.d_star; ++k) {
            c2 = s.c1;
            for (Color c : s.palette) {
                if (static_cast<int>(c2.size()) >= k) break;
                if (!std::binary_search(s.c1.begin(), s.c1.end(), c)) c2.push_back(c);
            }
            std::sort(c2.begin(), c2.end());
            std::vector<int> local(static_cast<std::size_t>(d + 3), 0);
            for (std::size_t i = 0; i < c2.size(); ++i) local[c2[i]] = static_cast<int>(i) + 1;
            std::vector<Color> phi_local;
            for (Color c : plan.phi0) phi_local.push_back(local[c]);
            ext = try_extend(sub.graph, q_local, phi_local, k, mix_seed(seed, 2), 200LL * (sub.graph.edge_count() + 1));
            if (ext) break;
            flag(s, "step2.palette-bump " + std::to_string(k + 1));
        }
        if (!ext) {
            need_global = true;
            count(step, "k", -1);
        } else {
            s.k = k;
            s.c2 = c2;
            count(step, "k", k);
            count(step, "greedy_colored", ext->stats.greedy_colored);
            count(step, "fan_shifts", ext->stats.fan_shifts);
            count(step, "chain_switches", ext->stats.chain_switches);
            count(step, "probe_switches", ext->stats.probe_switches);
            count(step, "walk_steps", ext->stats.walk_steps);
            count(step, "extension_guaranteed", ext->stats.guaranteed);
            check(step, "k_fits", "<=", k, s.d_star);

            std::map<Color, int> uses;
            for (Color c : plan.phi0) ++uses[c];
            int mult = 0;
            for (auto [c, u] : uses) mult = std::max(mult, u);
            const PartialColoring* inner = &ext->coloring;
            std::optional<BalanceResult> balanced;
            try {
                balanced.emplace(balance_missing(sub.graph, ext->coloring, q_local, mult));
                inner = &balanced->coloring;
                count(step, "balance_switches", balanced->report.switches);
            } catch (const ColoringError&) {
                flag(s, "step2.balance-incomplete");
            }
            check(step, "missing_spread", "<=", missing_spread(*inner), 17);
            check(step, "parity", "==", parity_check(*inner), 1);
            for (EdgeId e = 0; e < sub.graph.edge_count(); ++e)
                s.coloring->assign(sub.parent_edge[e], c2[inner->color(e) - 1]);
            for (EdgeId e : plan.q_edges) s.coloring->freeze(e);
        }
    }

    if (!need_global) {
        StepReport& step = new_step(report, "step3_saturate");
        Timer timer(step, options.timings);
        if (!step3_saturate(s, step)) need_global = true;
    }
    if (!need_global) {
        StepReport& step = new_step(report, "step4_complete");
        Timer timer(step, options.timings);
        if (!step4_complete(s, step)) need_global = true;
    }
    if (!need_global) {
        StepReport& step = new_step(report, "step5_finish");
        Timer timer(step, options.timings);
        if (!step5_finish(s, step)) need_global = true;
    }
    if (need_global) {
        StepReport& step = new_step(report, "global_repair");
        Timer timer(step, options.timings);
        flag(s, "global.kempe-repair");
        if (s.coloring->frozen_count() == 0) {
            s.coloring = std::make_unique<PartialColoring>(*s.g_star, d + 2);
            for (std::size_t i = 0; i < plan.q_edges.size(); ++i) s.coloring->assign(plan.q_edges[i], plan.phi0[i]);
        }
        if (!global_repair(s, plan.q_edges, plan.phi0)) throw PipelineError("global repair exhausted its budget");
    }

    {
        StepReport& step = new_step(report, "augmented_total");
        const PartialColoring& col = *s.coloring;
        check(step, "uncolored", "==", col.graph().edge_count() - col.colored_count(), 0);
        check(step, "colors_used", "==", static_cast<long long>(used_colors(col).size()), s.d_star);
        long long imperfect = 0;
        for (Color c : s.palette) imperfect += !is_perfect_class(col, c);
        check(step, "classes_imperfect", "==", imperfect, 0);
        check(step, "parity", "==", parity_check(col), 1);
        bool phi_kept = true;
        for (std::size_t i = 0; i < plan.q_edges.size(); ++i) phi_kept &= col.color(plan.q_edges[i]) == plan.phi0[i];
        check(step, "precoloring_kept", "==", phi_kept, 1);
        if (!col.is_total()) throw PipelineError("augmented coloring is not total");
    }

    // Step 6.
    PartialColoring final_coloring(graph, d + 2);
    {
        StepReport& step = new_step(report, "step6_output");
        Timer timer(step, options.timings);
        if (mode == Mode::Vd) {
            for (EdgeId e = 0; e < graph.edge_count(); ++e) final_coloring.assign(e, s.coloring->color(e));
        } else {
            const auto sums = color_sums(*s.coloring);
            const long long s_total = palette_sum(d, plan.c0);
            long long off = 0;
            for (long long x : sums) off += x != s_total;
            check(step, "pre_recolor_sums_off", "==", off, 0);
            PartialColoring psi = recolor_sd(*s.coloring, plan);
            for (EdgeId e = 0; e < graph.edge_count(); ++e) final_coloring.assign(e, psi.color(e));
            const auto expected = expected_vertex_sums(plan);
            report.sums_match = color_sums(final_coloring) == expected;
            check(step, "sums_match_prediction", "==", report.sums_match, 1);
        }
        check(step, "parity", "==", parity_check(final_coloring), 1);
    }

    report.verdict.proper = verify_proper(final_coloring);
    report.verdict.vd = report.verdict.proper && verify_vd(final_coloring);
    report.verdict.sd = report.verdict.proper && verify_sd(final_coloring);
    const auto used = used_colors(final_coloring);
    report.palette_size = static_cast<int>(used.size());
    for (Color c = 1; c <= d + 2; ++c)
        if (!std::binary_search(used.begin(), used.end(), c)) report.unused_colors.push_back(c);

    return PipelineResult{std::move(final_coloring), std::move(plan), std::move(report)};
}

PipelineResult run_vd(const MultiGraph& graph, std::uint64_t seed, const PipelineOptions& options) {
    if (graph.vertex_count() < 6) throw PipelineError("vertex-distinguishing mode needs n >= 6");
    return run(Mode::Vd, graph, seed, options);
}

PipelineResult run_sd(const MultiGraph& graph, std::uint64_t seed, const PipelineOptions& options) {
    if (graph.vertex_count() < 6) throw PipelineError("sum-distinguishing mode needs n >= 6");
    return run(Mode::Sd, graph, seed, options);
}

}  // namespace vdcolor
