#include "roughcocycle/analytic_cov.hpp"

#include <cmath>
#include <stdexcept>

namespace rough {

namespace {

void check_delta(double delta, const char* who) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument(std::string(who) + ": delta must lie in (0,1]");
}

void check_hurst(double hurst, const char* who) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument(std::string(who) + ": Hurst parameter must lie in (0,1)");
}

}  // namespace

double sigma2_x_delta(double u, double delta) {
    check_delta(delta, "sigma2_x_delta");
    if (u < 0.0)
        throw std::invalid_argument("sigma2_x_delta: negative u (reflect to |u| first)");
    if (u < delta) return u - u * u * u / (3.0 * delta * delta);
    return 2.0 * delta / 3.0;
}

double cov_i(double u, double delta, double hurst) {
    check_delta(delta, "cov_i");
    check_hurst(hurst, "cov_i");
    u = std::abs(u);
    const double p = 2.0 * hurst + 2.0;
    const double denom = delta * delta * (2.0 * hurst + 1.0) * p;
    double last = (u < delta) ? std::pow(delta - u, p) : std::pow(u - delta, p);
    return (std::pow(u + delta, p) - 2.0 * std::pow(delta, p) - 2.0 * std::pow(u, p) + last) /
           denom;
}

double cov_j(double u, double delta, double hurst) {
    check_delta(delta, "cov_j");
    check_hurst(hurst, "cov_j");
    u = std::abs(u);
    const double p = 2.0 * hurst + 1.0;
    const double denom = 2.0 * delta * p;
    double last = (u < delta) ? std::pow(delta - u, p) : -std::pow(u - delta, p);
    return (std::pow(u + delta, p) - 2.0 * std::pow(delta, p) + last) / denom;
}

double cov_k(double u, double delta, double hurst) {
    check_delta(delta, "cov_k");
    check_hurst(hurst, "cov_k");
    u = std::abs(u);
    const double p1 = 2.0 * hurst + 1.0;
    const double p2 = 2.0 * hurst + 2.0;
    double kbar;
    if (u < delta) {
        kbar = std::pow(u + delta, p2) + std::pow(delta - u, p2) - 2.0 * std::pow(u, p2) -
               delta * p2 * (std::pow(u + delta, p1) + std::pow(delta - u, p1)) +
               delta * delta * p1 * p2 * std::pow(u, 2.0 * hurst);
    } else {
        kbar = std::pow(u + delta, p2) + std::pow(u - delta, p2) - 2.0 * std::pow(u, p2) -
               delta * p2 * (std::pow(u + delta, p1) - std::pow(u - delta, p1)) +
               delta * delta * p1 * p2 * std::pow(u, 2.0 * hurst);
    }
    return std::pow(delta, 2.0 * hurst) / (hurst + 1.0) + kbar / (delta * delta * p1 * p2);
}

double constant_m(double rho) {
    if (!(rho >= 1.0)) throw std::invalid_argument("constant_m: rho must be >= 1");
    return std::pow((std::pow(2.0, 1.0 + rho) + 1.0) / std::pow(3.0, 1.0 - rho), 1.0 / rho);
}

double bound_rho_var_x_delta(double delta, double rho, double s, double t) {
    check_delta(delta, "bound_rho_var_x_delta");
    if (!(rho >= 1.0 && rho < 2.0))
        throw std::invalid_argument("bound_rho_var_x_delta: rho must lie in [1,2)");
    if (!(t > s)) throw std::invalid_argument("bound_rho_var_x_delta: reversed interval");
    return std::pow(delta, 1.0 - 1.0 / rho) * constant_m(rho) * std::pow(t - s, 1.0 / rho);
}

double bound_rho_var_bm(double horizon, double rho, double s, double t) {
    if (!(horizon > 0.0)) throw std::invalid_argument("bound_rho_var_bm: horizon must be positive");
    if (!(rho >= 1.0 && rho < 2.0))
        throw std::invalid_argument("bound_rho_var_bm: rho must lie in [1,2)");
    if (!(t > s)) throw std::invalid_argument("bound_rho_var_bm: reversed interval");
    return std::pow(horizon, 1.0 - 1.0 / rho) * constant_m(rho) * std::pow(t - s, 1.0 / rho);
}

CovarianceModel bm_model() {
    CovarianceModel m;
    m.label = "bm";
    m.sigma2 = [](double u) { return u; };
    m.growth_constant = [](double rho, double horizon) {
        return std::pow(horizon, 1.0 - 1.0 / rho);
    };
    return m;
}

CovarianceModel x_delta_model(double delta) {
    check_delta(delta, "x_delta_model");
    CovarianceModel m;
    m.label = "x_delta";
    m.delta = delta;
    m.sigma2 = [delta](double u) { return sigma2_x_delta(u, delta); };
    m.growth_constant = [delta](double rho, double) { return std::pow(delta, 1.0 - 1.0 / rho); };
    return m;
}

}  // namespace rough
