#pragma once

#include <optional>
#include <string>

#include "inventro/box.hpp"

namespace inventro {

/// Parsed run configuration (`key = value` lines, `#` comments). Unknown keys
/// are rejected; numeric constraints are validated at parse time.
struct RunConfig {
    std::string system;  // linear2d | pendulum | henon | henon-reversed
    double b = 1.0;
    double rho = 1.0;
    double eps = 0.009;
    double T_s = 0.1;
    int substeps = 10;
    std::optional<IntervalBox> domain;  // overrides the built-in Q
    std::vector<double> eta_s;          // one value or one per state dimension
    std::vector<double> eta_i;          // one value or one per input dimension
    std::string determinizer = "maxfreq";
    bool intersect_reversed = false;
    int64_t max_cells = 1000000000LL;
    int64_t max_oracle_nodes = 200;
    int64_t max_subsets = 5000000LL;
    int threads = 0;  // 0: hardware count (INVENTRO_THREADS overrides)
    std::string out_dir = "out";
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Effective worker count: config value, then INVENTRO_THREADS, then hardware.
int effective_threads(const RunConfig& cfg);

}  // namespace inventro
