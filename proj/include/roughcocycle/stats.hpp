#pragma once

#include <span>
#include <vector>

namespace rough {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    int n = 0;
};

MeanSe mean_se(std::span<const double> values);

// Sample variance (Bessel) with the Gaussian standard error s^2*sqrt(2/(n-1)).
MeanSe variance_se(std::span<const double> values);

// Least-squares slope of log(y) against log(x); x, y positive.
double fit_log_slope(std::span<const double> x, std::span<const double> y);

// Kendall tau-a of the sequence against its index order.
double kendall_tau(std::span<const double> values);

// Kendall tau between the group index and pooled per-sample values; pairs
// within a group are excluded. Reduces to kendall_tau for singleton groups.
double kendall_tau_grouped(const std::vector<std::vector<double>>& groups);

}  // namespace rough
