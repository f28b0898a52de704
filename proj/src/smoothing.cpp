#include "roughcocycle/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace rough {

namespace {

struct SmoothData {
    VectorPath path;        // omega_delta on the window grid
    std::vector<double> g;  // integrand (w(.+delta)-w(.))/delta at window points
};

void check_smooth_args(const VectorPath& omega, SmoothingParams params, IndexWindow window) {
    if (params.delta_cells < 1)
        throw std::invalid_argument("smoothing: delta must be at least one cell");
    if (window.first < 0 || window.first >= window.last)
        throw std::invalid_argument("smoothing: invalid target window");
    if (window.last + params.delta_cells > omega.grid().n_cells)
        throw std::invalid_argument("smoothing: source lacks the delta right extension");
}

SmoothData smooth_values(const VectorPath& omega, SmoothingParams params, IndexWindow window) {
    check_smooth_args(omega, params, window);
    const int m = omega.dim();
    const int kd = params.delta_cells;
    const double h = omega.grid().mesh;
    const double delta = params.delta(h);
    TimeGrid wgrid = subgrid(omega.grid(), window);
    auto zero = wgrid.index_of_zero();
    if (!zero) throw std::invalid_argument("smoothing: target window must contain time 0");

    const int nw = wgrid.n_cells;
    std::vector<double> g(static_cast<size_t>(nw + 1) * m);
    for (int i = 0; i <= nw; ++i) {
        const double* lo = omega.point(window.first + i);
        const double* hi = omega.point(window.first + i + kd);
        for (int c = 0; c < m; ++c) g[static_cast<size_t>(i) * m + c] = (hi[c] - lo[c]) / delta;
    }
    // cumulative trapezoid, exact for the piecewise-linear integrand
    VectorPath path(wgrid, m);
    for (int i = 0; i < nw; ++i) {
        const double* gi = g.data() + static_cast<size_t>(i) * m;
        const double* gi1 = g.data() + static_cast<size_t>(i + 1) * m;
        for (int c = 0; c < m; ++c)
            path.at(i + 1, c) = path.value(i, c) + 0.5 * h * (gi[c] + gi1[c]);
    }
    const int z = *zero;
    std::vector<double> anchor(m);
    for (int c = 0; c < m; ++c) anchor[c] = path.value(z, c);
    for (int i = 0; i <= nw; ++i)
        for (int c = 0; c < m; ++c) path.at(i, c) -= anchor[c];
    return SmoothData{std::move(path), std::move(g)};
}

}  // namespace

SmoothingParams make_smoothing_params(double delta, const TimeGrid& grid) {
    if (!(delta > 0.0)) throw std::invalid_argument("make_smoothing_params: delta must be positive");
    double cells = delta / grid.mesh;
    int k = static_cast<int>(std::llround(cells));
    if (k < 1 || std::abs(cells - k) > 1e-9 * std::max(1.0, cells))
        throw std::invalid_argument("make_smoothing_params: delta is not a mesh multiple");
    return SmoothingParams{k};
}

SmoothingParams nearest_smoothing_params(double delta, const TimeGrid& grid) {
    if (!(delta > 0.0))
        throw std::invalid_argument("nearest_smoothing_params: delta must be positive");
    int k = std::max(1, static_cast<int>(std::llround(delta / grid.mesh)));
    return SmoothingParams{k};
}

VectorPath smooth_path(const VectorPath& omega, SmoothingParams params, IndexWindow window) {
    return smooth_values(omega, params, window).path;
}

Eigen::VectorXd smooth_derivative(const VectorPath& omega, SmoothingParams params, int t_index) {
    if (params.delta_cells < 1)
        throw std::invalid_argument("smooth_derivative: delta must be at least one cell");
    if (t_index < 0 || t_index + params.delta_cells > omega.grid().n_cells)
        throw std::invalid_argument("smooth_derivative: t + delta leaves the grid");
    const int m = omega.dim();
    const double delta = params.delta(omega.grid().mesh);
    Eigen::VectorXd out(m);
    const double* lo = omega.point(t_index);
    const double* hi = omega.point(t_index + params.delta_cells);
    for (int c = 0; c < m; ++c) out(c) = (hi[c] - lo[c]) / delta;
    return out;
}

AreaField smooth_area(const VectorPath& omega, SmoothingParams params, IndexWindow window) {
    SmoothData sd = smooth_values(omega, params, window);
    const int m = omega.dim();
    const int nw = sd.path.grid().n_cells;
    const double h = omega.grid().mesh;
    AreaField area(sd.path.grid(), m);
    std::vector<double> gm(m), pmid(m), dmid(m), dfull(m);
    const double* base = sd.path.point(0);
    for (int i = 0; i < nw; ++i) {
        const double* gi = sd.g.data() + static_cast<size_t>(i) * m;
        const double* gi1 = sd.g.data() + static_cast<size_t>(i + 1) * m;
        const double* pi = sd.path.point(i);
        const double* pi1 = sd.path.point(i + 1);
        for (int c = 0; c < m; ++c) {
            gm[c] = 0.5 * (gi[c] + gi1[c]);
            // half-cell trapezoid, exact since the integrand is linear
            dmid[c] = 0.25 * h * (gi[c] + gm[c]);
            dfull[c] = pi1[c] - pi[c];
        }
        const double* ai = area.at(i);
        double* ai1 = area.at(i + 1);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                // Simpson over the cell; the r=t_i term vanishes
                double cell = h / 6.0 * (4.0 * dmid[r] * gm[c] + dfull[r] * gi1[c]);
                ai1[r * m + c] = ai[r * m + c] + cell + (pi[r] - base[r]) * dfull[c];
            }
    }
    return area;
}

RoughPathLift smooth_lift(const VectorPath& omega, SmoothingParams params, IndexWindow window) {
    VectorPath path = smooth_path(omega, params, window);
    AreaField area = smooth_area(omega, params, window);
    return RoughPathLift{std::move(path), std::move(area), true};
}

VectorPath diff_process(const VectorPath& omega, const VectorPath& omega_delta) {
    return path_difference(omega_delta, omega);
}

}  // namespace rough
