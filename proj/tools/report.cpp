#include "report.hpp"

#include <iomanip>
#include <sstream>

namespace vdcolor::cli {

Json config_json(const RunConfig& c) {
    Json j;
    j["subcommand"] = c.subcommand;
    j["mode"] = c.mode;
    j["input"] = c.input;
    j["output"] = c.output;
    j["n"] = c.n;
    j["d"] = c.d;
    j["seed"] = c.seed;
    j["epsilon"] = c.epsilon;
    j["fallback"] = c.fallback;
    j["format"] = c.json ? "json" : "text";
    j["timestamps"] = c.timestamps;
    return j;
}

Json report_json(const PipelineReport& r) {
    Json j;
    j["mode"] = r.mode == Mode::Vd ? "vd" : "sd";
    j["n"] = r.n;
    j["d"] = r.d;
    j["d_star"] = r.d_star;
    j["seed"] = r.seed;
    j["epsilon"] = r.epsilon;
    j["steps"] = Json::array();
    for (const auto& s : r.steps) {
        Json step;
        step["name"] = s.name;
        step["bounds"] = Json::array();
        for (const auto& b : s.bounds) {
            step["bounds"].push_back(
                {{"name", b.name}, {"relation", b.relation}, {"required", b.required}, {"measured", b.measured}, {"ok", b.ok}});
        }
        Json counters = Json::object();
        for (const auto& [k, v] : s.counters) counters[k] = v;
        step["counters"] = counters;
        if (r.timings) step["millis"] = s.millis;
        j["steps"].push_back(step);
    }
    j["fallbacks"] = r.fallbacks;
    Json paths = Json::object();
    for (const auto& [len, count] : r.path_lengths) paths[std::to_string(len)] = count;
    j["path_lengths"] = paths;
    j["verdict"] = {{"proper", r.verdict.proper}, {"vd", r.verdict.vd}, {"sd", r.verdict.sd}};
    if (r.mode == Mode::Sd) j["sums_match"] = r.sums_match;
    j["palette"] = {{"size", r.palette_size}, {"unused", r.unused_colors}};
    return j;
}

std::string report_text(const RunConfig& config, const PipelineReport& r) {
    std::ostringstream out;
    out << "config: " << config_json(config).dump() << '\n';
    out << "mode " << (r.mode == Mode::Vd ? "vd" : "sd") << "  n=" << r.n << " d=" << r.d << " d*=" << r.d_star
        << " seed=" << r.seed << '\n';
    for (const auto& s : r.steps) {
        out << "[" << s.name << "]";
        if (r.timings) out << " " << std::fixed << std::setprecision(2) << s.millis << " ms";
        out << '\n';
        for (const auto& b : s.bounds) {
            out << "  " << (b.ok ? "ok  " : "FAIL") << " " << b.name << ": " << b.measured << ' ' << b.relation << ' '
                << b.required << '\n';
        }
        for (const auto& [k, v] : s.counters) out << "  " << k << " = " << v << '\n';
    }
    if (!r.path_lengths.empty()) {
        out << "exchange paths:";
        for (const auto& [len, count] : r.path_lengths) out << ' ' << len << "-edge x" << count;
        out << '\n';
    }
    out << "fallbacks: " << r.fallbacks.size() << '\n';
    for (const auto& f : r.fallbacks) out << "  " << f << '\n';
    out << "palette: " << r.palette_size << " colors used, unused {";
    for (std::size_t i = 0; i < r.unused_colors.size(); ++i) out << (i ? "," : "") << r.unused_colors[i];
    out << "}\n";
    out << "verdict: proper=" << r.verdict.proper << " vd=" << r.verdict.vd << " sd=" << r.verdict.sd;
    if (r.mode == Mode::Sd) out << " sums_match=" << r.sums_match;
    out << '\n';
    return out.str();
}

Json oracle_json(const OracleResult& result, const std::string& mode) {
    Json j;
    j["mode"] = mode;
    j["value"] = result.value;
    j["exact"] = result.exact;
    j["lower"] = result.lower;
    j["upper"] = result.upper;
    j["nodes_explored"] = result.nodes_explored;
    if (result.witness) j["witness"] = *result.witness;
    return j;
}

}  // namespace vdcolor::cli
