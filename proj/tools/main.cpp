#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "report.hpp"
#include "vdcolor/coloring.hpp"
#include "vdcolor/graph.hpp"
#include "vdcolor/oracles.hpp"
#include "vdcolor/pipeline.hpp"

using namespace vdcolor;
using vdcolor::cli::Json;
using vdcolor::cli::RunConfig;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Bad input files and arguments the flag parser cannot catch.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

MultiGraph load_graph(const std::string& path) {
    try {
        return read_graph(read_file(path));
    } catch (const GraphError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

MultiGraph graph_from(const RunConfig& c) {
    if (!c.input.empty()) return load_graph(c.input);
    if (c.n <= 0) throw UsageError("either --input or --n/--d is required");
    try {
        return random_regular(c.n, c.d, c.seed);
    } catch (const GraphError& e) {
        throw UsageError(e.what());
    }
}

PipelineOptions options_from(const RunConfig& c) {
    PipelineOptions o;
    o.epsilon = c.epsilon;
    o.fallback = c.fallback == "on";
    o.timings = c.timestamps;
    return o;
}

bool run_passed(const PipelineReport& r) {
    return r.mode == Mode::Vd ? r.verdict.vd : (r.verdict.sd && r.sums_match);
}

int cmd_generate(const RunConfig& c, const std::string& family) {
    MultiGraph g;
    try {
        if (family == "complete") g = complete_graph(c.n);
        else if (family == "cycle") g = cycle_graph(c.n);
        else g = random_regular(c.n, c.d, c.seed);
    } catch (const GraphError& e) {
        throw UsageError(e.what());
    }
    write_output(c.output, write_graph(g));
    return 0;
}

int cmd_color(const RunConfig& c, const std::string& report_path) {
    const MultiGraph g = graph_from(c);
    const Mode mode = c.mode == "sd" ? Mode::Sd : Mode::Vd;
    PipelineResult result = [&] {
        try {
            return run(mode, g, c.seed, options_from(c));
        } catch (const PipelineError& e) {
            std::cerr << "color: " << e.what() << '\n';
            throw;
        }
    }();
    if (!c.output.empty()) write_output(c.output, write_coloring(result.coloring));
    std::string report;
    if (c.json) {
        Json j;
        j["config"] = cli::config_json(c);
        j["report"] = cli::report_json(result.report);
        report = j.dump(2) + "\n";
    } else {
        report = cli::report_text(c, result.report);
    }
    write_output(report_path, report);
    if (!run_passed(result.report)) {
        std::cerr << "color: verdict failed\n";
        return kExitFailed;
    }
    return 0;
}

// Re-checks a coloring file against a graph with the coloring_core verifiers
// only. Returns the first violated constraint.
std::optional<std::string> verify_file(const MultiGraph& g, const ColoringFile& file, const std::string& mode) {
    if (file.n != g.vertex_count() || file.m != g.edge_count())
        return "shape: coloring has n=" + std::to_string(file.n) + " m=" + std::to_string(file.m) +
               ", graph has n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count());
    const int d = g.max_degree();
    if (file.k > d + 2 && mode != "proper")
        return "palette: file declares " + std::to_string(file.k) + " colors, more than d+2=" + std::to_string(d + 2);
    PartialColoring coloring(g, std::max(file.k, 1));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.endpoints(e);
        const auto [fu, fv] = file.endpoints[e];
        if (!((u == fu && v == fv) || (u == fv && v == fu)))
            return "shape: edge " + std::to_string(e) + " joins different vertices than in the graph";
        const Color col = file.colors[e];
        if (col < 1 || col > file.k)
            return "palette: edge " + std::to_string(e) + " has color " + std::to_string(col) + " outside [1," +
                   std::to_string(file.k) + "]";
        try {
            coloring.assign(e, col);
        } catch (const ColoringError& err) {
            return std::string("proper: ") + err.what();
        }
    }
    if (auto why = proper_violation(coloring)) return "proper: " + *why;
    const auto sums = color_sums(coloring);
    const auto sets = color_sets(coloring);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (file.sums[v] != sums[v])
            return "label: vertex " + std::to_string(v) + " records sum " + std::to_string(file.sums[v]) +
                   " but its edges sum to " + std::to_string(sums[v]);
        if (file.sets[v] != sets[v]) return "label: vertex " + std::to_string(v) + " records a different color set";
    }
    if (mode == "vd")
        if (auto why = vd_violation(coloring)) return "vd: " + *why;
    if (mode == "sd")
        if (auto why = sd_violation(coloring)) return "sd: " + *why;
    return std::nullopt;
}

int cmd_verify(const RunConfig& c, const std::string& coloring_path) {
    if (c.input.empty() || coloring_path.empty()) throw UsageError("verify needs --input GRAPH and --coloring FILE");
    const MultiGraph g = load_graph(c.input);
    ColoringFile file;
    try {
        file = parse_coloring(read_file(coloring_path));
    } catch (const std::exception& e) {
        throw UsageError(coloring_path + ": " + e.what());
    }
    if (auto why = verify_file(g, file, c.mode)) {
        std::cerr << "verify: " << *why << '\n';
        std::cout << "FAIL " << *why << '\n';
        return kExitFailed;
    }
    std::cout << "OK " << c.mode << '\n';
    return 0;
}

int cmd_oracle(const RunConfig& c, int complete, long long budget) {
    const MultiGraph g = complete > 0 ? complete_graph(complete) : graph_from(c);
    const Distinction kind = c.mode == "proper" ? Distinction::Proper
                             : c.mode == "sd"   ? Distinction::Sd
                                                : Distinction::Vd;
    OracleResult result;
    try {
        result = exact_index(g, kind, budget);
    } catch (const OracleError& e) {
        throw UsageError(e.what());
    }
    if (c.json) {
        std::cout << cli::oracle_json(result, c.mode).dump(2) << '\n';
    } else if (result.exact) {
        std::cout << result.value << '\n';
    } else {
        std::cout << "budget exhausted: value in [" << result.lower << ", "
                  << (result.upper < 0 ? std::string("?") : std::to_string(result.upper)) << "]\n";
    }
    if (result.witness && !c.output.empty()) {
        PartialColoring coloring(g, std::max(result.value, 1));
        for (EdgeId e = 0; e < g.edge_count(); ++e) coloring.assign(e, (*result.witness)[e]);
        write_output(c.output, write_coloring(coloring));
    }
    return result.exact ? 0 : kExitFailed;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct BenchPoint {
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
};

struct BenchOutcome {
    BenchPoint point;
    bool passed = false;
    std::string error;
    std::optional<PipelineReport> report;
};

int cmd_bench(const RunConfig& c, const std::string& sizes, const std::string& densities, int seeds, int threads) {
    std::vector<BenchPoint> points;
    try {
        for (const auto& ns : split_list(sizes)) {
            const int n = std::stoi(ns);
            for (const auto& fs : split_list(densities)) {
                int d = static_cast<int>(std::ceil(std::stod(fs) * n));
                d = std::min(d, n - 1);
                if ((static_cast<long long>(n) * d) % 2 != 0) ++d;
                if (d >= n) continue;
                for (int s = 1; s <= seeds; ++s) points.push_back({n, d, static_cast<std::uint64_t>(s)});
            }
        }
    } catch (const std::logic_error&) {
        throw UsageError("malformed --sizes or --densities list");
    }
    const Mode mode = c.mode == "sd" ? Mode::Sd : Mode::Vd;
    const PipelineOptions options = options_from(c);

    auto work = [&](BenchPoint p) {
        BenchOutcome out{p, false, {}, std::nullopt};
        try {
            const MultiGraph g = random_regular(p.n, p.d, p.seed);
            PipelineResult r = run(mode, g, p.seed, options);
            out.passed = run_passed(r.report);
            out.report = std::move(r.report);
        } catch (const std::exception& e) {
            out.error = e.what();
        }
        return out;
    };
    std::vector<BenchOutcome> outcomes(points.size());
    const int workers = std::max(1, threads);
    for (std::size_t start = 0; start < points.size(); start += static_cast<std::size_t>(workers)) {
        std::vector<std::future<BenchOutcome>> batch;
        for (std::size_t i = start; i < std::min(points.size(), start + workers); ++i)
            batch.push_back(std::async(std::launch::async, work, points[i]));
        for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
    }

    std::map<std::string, std::pair<long long, long long>> bound_rates;  // name -> (ok, total)
    std::map<std::string, long long> fallback_counts;
    long long passed = 0;
    Json rows = Json::array();
    for (const auto& o : outcomes) {
        passed += o.passed;
        Json row{{"n", o.point.n}, {"d", o.point.d}, {"seed", o.point.seed}, {"passed", o.passed}};
        if (!o.error.empty()) row["error"] = o.error;
        if (o.report) {
            for (const auto& s : o.report->steps)
                for (const auto& b : s.bounds) {
                    auto& [ok, total] = bound_rates[s.name + "." + b.name];
                    ok += b.ok;
                    ++total;
                }
            for (const auto& f : o.report->fallbacks) ++fallback_counts[f.substr(0, f.find(' '))];
            row["fallbacks"] = o.report->fallbacks.size();
        }
        rows.push_back(row);
    }
    if (c.json) {
        Json j;
        j["config"] = cli::config_json(c);
        j["runs"] = rows;
        j["passed"] = passed;
        j["total"] = outcomes.size();
        Json rates = Json::object();
        for (const auto& [name, v] : bound_rates) rates[name] = {{"ok", v.first}, {"total", v.second}};
        j["bound_pass_rates"] = rates;
        j["fallback_counts"] = fallback_counts;
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& o : outcomes) {
            std::cout << "n=" << o.point.n << " d=" << o.point.d << " seed=" << o.point.seed << " "
                      << (o.passed ? "pass" : "FAIL");
            if (!o.error.empty()) std::cout << " (" << o.error << ")";
            if (o.report) std::cout << " fallbacks=" << o.report->fallbacks.size();
            std::cout << '\n';
        }
        std::cout << "verdicts: " << passed << "/" << outcomes.size() << '\n';
        std::cout << "bound pass rates:\n";
        for (const auto& [name, v] : bound_rates)
            std::cout << "  " << name << ": " << v.first << "/" << v.second << '\n';
        std::cout << "fallbacks:\n";
        for (const auto& [name, count] : fallback_counts) std::cout << "  " << name << ": " << count << '\n';
    }
    return passed == static_cast<long long>(outcomes.size()) ? 0 : kExitFailed;
}

void add_common(CLI::App* sub, RunConfig& c, bool with_pipeline) {
    sub->add_option("--input", c.input, "graph file (header \"n m\", then one \"u v\" per edge)");
    sub->add_option("--output", c.output, "output path");
    sub->add_option("--n", c.n, "vertex count")->check(CLI::PositiveNumber);
    sub->add_option("--d", c.d, "degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_flag("--json", c.json, "structured output");
    if (with_pipeline) {
        sub->add_option("--epsilon", c.epsilon, "density slack recorded against d >= (1+eps)n/2")
            ->check(CLI::Range(0.0, 1.0));
        sub->add_option("--fallback", c.fallback, "allow logged fallbacks")->check(CLI::IsMember({"on", "off"}));
        sub->add_flag("--no-timestamps{false}", c.timestamps, "omit timings for byte-identical reports");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distinguishing edge colorings of dense regular graphs"};
    app.require_subcommand(1);
    RunConfig c;

    auto* generate = app.add_subcommand("generate", "write a graph file");
    add_common(generate, c, false);
    std::string family = "regular";
    generate->add_option("--family", family, "graph family")->check(CLI::IsMember({"regular", "complete", "cycle"}));

    auto* color = app.add_subcommand("color", "run the coloring pipeline");
    add_common(color, c, true);
    color->add_option("--mode", c.mode, "vd or sd")->check(CLI::IsMember({"vd", "sd"}));
    std::string report_path;
    color->add_option("--report", report_path, "report path (default: stdout)");

    auto* verify = app.add_subcommand("verify", "check a coloring file against a graph");
    add_common(verify, c, false);
    verify->add_option("--mode", c.mode, "proper, vd or sd")->check(CLI::IsMember({"proper", "vd", "sd"}));
    std::string coloring_path;
    verify->add_option("--coloring", coloring_path, "coloring file")->required();

    auto* oracle = app.add_subcommand("oracle", "exact chromatic index of a small graph");
    add_common(oracle, c, false);
    oracle->add_option("--mode", c.mode, "proper, vd or sd")->check(CLI::IsMember({"proper", "vd", "sd"}));
    int complete = 0;
    long long budget = kDefaultOracleBudget;
    oracle->add_option("--complete", complete, "use the complete graph on N vertices")->check(CLI::PositiveNumber);
    oracle->add_option("--budget", budget, "search node budget")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "sweep an (n, d, seed) grid");
    add_common(bench, c, true);
    bench->add_option("--mode", c.mode, "vd or sd")->check(CLI::IsMember({"vd", "sd"}));
    std::string sizes = "12,16,20", densities = "0.7,0.8";
    int seeds = 3;
    int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    bench->add_option("--sizes", sizes, "comma-separated vertex counts");
    bench->add_option("--densities", densities, "comma-separated d/n ratios");
    bench->add_option("--seeds", seeds, "seeds per grid point")->check(CLI::PositiveNumber);
    bench->add_option("--threads", threads, "parallel runs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) {
            c.subcommand = "generate";
            return cmd_generate(c, family);
        }
        if (color->parsed()) {
            c.subcommand = "color";
            return cmd_color(c, report_path);
        }
        if (verify->parsed()) {
            c.subcommand = "verify";
            return cmd_verify(c, coloring_path);
        }
        if (oracle->parsed()) {
            c.subcommand = "oracle";
            return cmd_oracle(c, complete, budget);
        }
        c.subcommand = "bench";
        return cmd_bench(c, sizes, densities, seeds, threads);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PipelineError&) {
        return kExitFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}
