#include "roughcocycle/variation.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>

namespace rough {

RectCovariance rect_cov_from_sigma2(const CovarianceModel& model) {
    auto s2 = model.sigma2;
    return RectCovariance([s2](double s, double t, double sp, double tp) {
        return 0.5 * (s2(std::abs(t - sp)) + s2(std::abs(s - tp)) - s2(std::abs(t - tp)) -
                      s2(std::abs(s - sp)));
    });
}

RectCovariance rect_cov_from_paths(const std::vector<VectorPath>& paths, int component) {
    if (paths.empty()) throw std::invalid_argument("rect_cov_from_paths: empty sample set");
    const TimeGrid grid = paths.front().grid();
    for (const auto& p : paths)
        if (!(p.grid() == grid))
            throw std::invalid_argument("rect_cov_from_paths: paths must share a grid");
    auto snap = [grid](double t) {
        double cells = (t - grid.t_start) / grid.mesh;
        int k = static_cast<int>(std::llround(cells));
        if (k < 0 || k > grid.n_cells || std::abs(cells - k) > 1e-9)
            throw std::invalid_argument("rect_cov_from_paths: time not on the grid");
        return k;
    };
    // shared_ptr keeps the sample set alive inside the returned evaluator
    auto data = std::make_shared<std::vector<VectorPath>>(paths);
    return RectCovariance([data, snap, component](double s, double t, double sp, double tp) {
        int is = snap(s), it = snap(t), isp = snap(sp), itp = snap(tp);
        double acc = 0.0;
        for (const auto& p : *data)
            acc += (p.value(it, component) - p.value(is, component)) *
                   (p.value(itp, component) - p.value(isp, component));
        return acc / static_cast<double>(data->size());
    });
}

double rho_variation_bruteforce(const RectCovariance& cov, const std::vector<double>& points,
                                double rho) {
    const int n = static_cast<int>(points.size());
    if (n < 2 || n > 10)
        throw std::invalid_argument("rho_variation_bruteforce: need 2..10 points");
    if (!(rho >= 1.0)) throw std::invalid_argument("rho_variation_bruteforce: rho must be >= 1");
    for (int i = 1; i < n; ++i)
        if (!(points[i] > points[i - 1]))
            throw std::invalid_argument("rho_variation_bruteforce: points must be increasing");

    // |R|^rho for every interval pair; intervals are (a,b) index pairs a<b.
    const int np = n * n;
    std::vector<double> rpow(static_cast<size_t>(np) * np, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    rpow[static_cast<size_t>(a * n + b) * np + c * n + d] =
                        std::pow(std::abs(cov(points[a], points[b], points[c], points[d])), rho);

    // Partitions keep both endpoints; masks choose the interior points.
    const int interior = n - 2;
    const uint32_t n_masks = 1u << interior;
    std::vector<std::vector<int>> cells(n_masks);
    for (uint32_t mask = 0; mask < n_masks; ++mask) {
        int prev = 0;
        for (int i = 0; i < interior; ++i) {
            if (mask & (1u << i)) {
                cells[mask].push_back(prev * n + (i + 1));
                prev = i + 1;
            }
        }
        cells[mask].push_back(prev * n + (n - 1));
    }

    double sup = 0.0;
    for (uint32_t m1 = 0; m1 < n_masks; ++m1)
        for (uint32_t m2 = 0; m2 < n_masks; ++m2) {
            double sum = 0.0;
            for (int c1 : cells[m1])
                for (int c2 : cells[m2]) sum += rpow[static_cast<size_t>(c1) * np + c2];
            sup = std::max(sup, sum);
        }
    return std::pow(sup, 1.0 / rho);
}

HypothesesReport check_th109_hypotheses(const CovarianceModel& model, double h, double rho,
                                        double growth_constant, int scan_points) {
    if (!(h > 0.0)) throw std::invalid_argument("check_th109_hypotheses: h must be positive");
    if (scan_points < 3)
        throw std::invalid_argument("check_th109_hypotheses: need at least 3 scan points");
    const double tol = 1e-12;
    HypothesesReport rep;
    rep.nondecreasing = true;
    rep.concave = true;
    rep.growth_ok = true;
    rep.growth_constant = growth_constant;
    rep.implied_bound_unit = growth_constant * constant_m(rho);
    const double step = h / (scan_points - 1);
    std::vector<double> vals(scan_points);
    for (int i = 0; i < scan_points; ++i) vals[i] = model.sigma2(i * step);
    for (int i = 0; i + 1 < scan_points; ++i) {
        double d = vals[i] - vals[i + 1];
        if (d > tol) {
            rep.nondecreasing = false;
            rep.worst_violation = std::max(rep.worst_violation, d);
        }
    }
    for (int i = 1; i + 1 < scan_points; ++i) {
        double second = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
        if (second > tol) {
            rep.concave = false;
            rep.worst_violation = std::max(rep.worst_violation, second);
        }
    }
    for (int i = 0; i < scan_points; ++i) {
        double excess = vals[i] - growth_constant * std::pow(i * step, 1.0 / rho);
        if (excess > tol) {
            rep.growth_ok = false;
            rep.worst_violation = std::max(rep.worst_violation, excess);
        }
    }
    return rep;
}

}  // namespace rough
