#pragma once

#include <functional>
#include <string>

namespace rough {

// Variance of the smoothing residual X_delta = omega_delta - omega for a
// Brownian source: u - u^3/(3 delta^2) below delta, 2 delta/3 above.
double sigma2_x_delta(double u, double delta);

// Variance of omega_delta(u) for a fractional Brownian source with Hurst
// parameter H; negative u is evaluated by reflection.
double cov_i(double u, double delta, double hurst);

// Cross moment E omega_delta(u) omega(u); reflection for negative u.
double cov_j(double u, double delta, double hurst);

// Variance of X_delta(u) for a fractional Brownian source, both branches of
// the displayed formula; reflection for negative u. Satisfies the assembly
// identity cov_k = cov_i + u^{2H} - 2 cov_j.
double cov_k(double u, double delta, double hurst);

// M(rho) = ((2^{1+rho} + 1)/3^{1-rho})^{1/rho}; M(1) = 5 exactly.
double constant_m(double rho);

// delta^{1-1/rho} * M(rho) * (t-s)^{1/rho}: upper bound for the 2D
// rho-variation of the incremental covariance of X_delta over [s,t]^2.
double bound_rho_var_x_delta(double delta, double rho, double s, double t);

// T^{1-1/rho} * M(rho) * (t-s)^{1/rho}: the same bound for Brownian motion
// on a horizon [0,T].
double bound_rho_var_bm(double horizon, double rho, double s, double t);

// One-dimensional stationary-increment model: sigma2(tau) is the variance of
// an increment of width tau >= 0.
struct CovarianceModel {
    std::string label;
    std::function<double(double)> sigma2;
    double delta = 0.0;  // smoothing width, when applicable

    // Growth constant L with sigma2(u) <= L u^{1/rho} on the model's domain.
    std::function<double(double rho, double horizon)> growth_constant;
};

CovarianceModel bm_model();
CovarianceModel x_delta_model(double delta);

}  // namespace rough
