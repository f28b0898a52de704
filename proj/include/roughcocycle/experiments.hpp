#pragma once

#include <string>
#include <vector>

#include "roughcocycle/config.hpp"
#include "roughcocycle/stats.hpp"

namespace rough {

// --- reusable experiment drivers -----------------------------------------
// The cmd_* entry points wrap these into CSV reports; the acceptance suite
// calls them directly.

struct PathDeltaStat {
    double delta = 0.0;
    int delta_cells = 0;
    MeanSe rho_sq;   // E rho_beta(lift_delta, lift)^2
    MeanSe rho_2q;   // E rho_beta(...)^{2q} for the configured q
};

struct PathConvergenceResult {
    std::vector<PathDeltaStat> per_delta;  // deltas descending
    bool monotone = false;
    bool has_slope = false;
    double slope = 0.0;
    double slope_threshold = 0.0;  // 0.9*(1 - 1/rho)
    bool slope_pass = false;
    bool all_pass = false;
};

PathConvergenceResult path_convergence_run(const ExperimentConfig& config);

struct RdsDeltaStat {
    double delta = 0.0;
    int n_excluded = 0;  // diverged solves, reported and skipped
    MeanSe holder_err;   // |||Y_delta - Y|||_beta
    MeanSe ratio;        // holder_err / (|xi_delta - xi| + rho_beta)
};

struct RdsConvergenceResult {
    std::vector<RdsDeltaStat> per_delta;
    bool monotone = false;
    double kendall = 0.0;         // over the per-delta mean ratios (pass flag)
    double kendall_pooled = 0.0;  // over pooled per-sample ratios (diagnostic)
    double kendall_threshold = 0.3;
    bool trend_pass = false;
    bool all_pass = false;
};

RdsConvergenceResult rds_convergence_run(const ExperimentConfig& config);

struct CocycleResult {
    double mesh = 0.0;
    double mesh_half = 0.0;
    std::vector<double> rough_defect;     // per sample, max over (tau, t) pairs
    std::vector<double> rk4_defect;       // at mesh
    std::vector<double> rk4_defect_half;  // at mesh/2
    double rough_threshold = 1e-10;
    bool rough_pass = false;
    bool rk4_pass = false;       // <= 10*mesh
    bool rk4_half_pass = false;  // <= 10*(mesh/2): threshold scales with mesh
    bool all_pass = false;
};

CocycleResult cocycle_run(const ExperimentConfig& config, int samples_override = 0);

// Monte Carlo estimates of Var w_delta(u), E w_delta(u) w(u) and Var X_delta(u)
// for a single Hurst parameter, coupled across the delta ladder.
struct CovariancePoint {
    double hurst = 0.5;
    double delta_nominal = 0.0;
    double delta_effective = 0.0;  // snapped to a whole number of cells
    double u_nominal = 0.0;
    double u_effective = 0.0;  // snapped to the nearest grid point
    MeanSe var_omega_delta;    // against cov_i
    MeanSe cross_moment;       // against cov_j
    MeanSe var_x_delta;        // against cov_k (= sigma2_x_delta at H=1/2)
};

std::vector<CovariancePoint> covariance_points_run(const ExperimentConfig& config, double hurst);

// --- CLI subcommands -------------------------------------------------------

struct CommandOutput {
    bool all_pass = true;
    std::vector<std::string> files_written;
};

CommandOutput cmd_simulate(const ExperimentConfig& config);
CommandOutput cmd_solve(const ExperimentConfig& config);
CommandOutput cmd_covariance_check(const ExperimentConfig& config);
CommandOutput cmd_variation_check(const ExperimentConfig& config);
CommandOutput cmd_path_convergence(const ExperimentConfig& config);
CommandOutput cmd_rds_convergence(const ExperimentConfig& config);
CommandOutput cmd_cocycle_check(const ExperimentConfig& config);
CommandOutput cmd_moment_scaling(const ExperimentConfig& config);
CommandOutput cmd_covariance_table(const ExperimentConfig& config);

std::vector<std::string> command_names();
CommandOutput run_command(const std::string& name, const ExperimentConfig& config);

}  // namespace rough
