#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "vdcolor/oracles.hpp"
#include "vdcolor/pipeline.hpp"

namespace vdcolor::cli {

using Json = nlohmann::ordered_json;

// Parsed flags, echoed at the top of every report.
struct RunConfig {
    std::string subcommand;
    std::string mode = "vd";
    std::string input;
    std::string output;
    int n = 0;
    int d = 0;
    std::uint64_t seed = 1;
    double epsilon = 0.05;
    std::string fallback = "on";
    bool json = false;
    bool timestamps = true;
};

Json config_json(const RunConfig& config);
Json report_json(const PipelineReport& report);
std::string report_text(const RunConfig& config, const PipelineReport& report);
Json oracle_json(const OracleResult& result, const std::string& mode);

}  // namespace vdcolor::cli
