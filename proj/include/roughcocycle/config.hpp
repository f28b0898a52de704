#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace rough {

// Plain-text `key = value` experiment configuration, one pair per line,
// `#` comments. Unknown keys are rejected; missing mandatory keys are listed
// together. See README for the key reference.
struct ExperimentConfig {
    uint64_t master_seed = 42;
    double t_horizon = 1.0;
    int mesh_exponent = 12;  // grid has 2^mesh_exponent cells per unit time
    std::vector<double> deltas = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
    double beta = 0.335;
    double rho = 1.25;
    double q = 8.0;
    int samples = 500;
    std::string out_dir = "out";
    std::string field = "sincos2d";
    int dim = 2;
    std::vector<double> xi = {0.1, 0.2};
    std::vector<double> xi_delta = {0.1, 0.2};
    std::vector<double> hurst_list = {0.5};
    std::vector<double> u_list = {0.05, 0.2, 0.5, 1.0, 2.0};
    int threads = 0;  // 0 = hardware concurrency
    bool kolmogorov = true;
    std::vector<double> rho_list = {1.0, 1.25, 1.5};
    int scale_count = 6;
    std::string driver = "bm";  // solve subcommand: bm | smooth

    double mesh() const { return std::ldexp(1.0, -mesh_exponent); }

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig default_config();

// Parse one key/value pair as a config file line would; throws on unknown
// keys or malformed values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

// Throws std::invalid_argument with a line-numbered message on parse errors.
ExperimentConfig load_config(const std::string& path);

void write_config(const ExperimentConfig& config, const std::string& path);

// Invariants: sample count, delta ladder (descending, each at least 8 times
// the mesh), the Kolmogorov-regime window for beta, and basic ranges.
void validate_config(const ExperimentConfig& config);

}  // namespace rough
