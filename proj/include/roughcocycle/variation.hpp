#pragma once

#include <functional>
#include <vector>

#include "roughcocycle/analytic_cov.hpp"
#include "roughcocycle/grid_path.hpp"

namespace rough {

// Rectangular incremental covariance R(s,t;s',t') = E (X(t)-X(s))(X(t')-X(s')).
class RectCovariance {
public:
    using Eval = std::function<double(double, double, double, double)>;
    explicit RectCovariance(Eval eval) : eval_(std::move(eval)) {}
    double operator()(double s, double t, double sp, double tp) const {
        return eval_(s, t, sp, tp);
    }

private:
    Eval eval_;
};

// Polarization of stationary increments:
// R = (sigma2(|t-s'|) + sigma2(|s-t'|) - sigma2(|t-t'|) - sigma2(|s-s'|)) / 2.
// Valid on all of R, including rectangles crossing the origin.
RectCovariance rect_cov_from_sigma2(const CovarianceModel& model);

// Empirical incremental covariance of one component of a Monte Carlo family
// of paths on a shared grid; times are snapped to grid indices.
RectCovariance rect_cov_from_paths(const std::vector<VectorPath>& paths, int component);

// Exact 2D rho-variation over the rectangle [p_front, p_back]^2, brute-forced
// over every pair of partitions built from the given points (2 <= n <= 10).
double rho_variation_bruteforce(const RectCovariance& cov, const std::vector<double>& points,
                                double rho);

struct HypothesesReport {
    bool nondecreasing = false;
    bool concave = false;
    bool growth_ok = false;
    double growth_constant = 0.0;   // L in sigma2(u) <= L u^{1/rho}
    double implied_bound_unit = 0.0;  // L*M(rho): bound coefficient of (t-s)^{1/rho}
    double worst_violation = 0.0;
    bool all() const { return nondecreasing && concave && growth_ok; }
};

// Dense scan of sigma2 on [0,h]: monotone, concave, and sigma2(u) <= L u^{1/rho}.
HypothesesReport check_th109_hypotheses(const CovarianceModel& model, double h, double rho,
                                        double growth_constant, int scan_points = 512);

}  // namespace rough
