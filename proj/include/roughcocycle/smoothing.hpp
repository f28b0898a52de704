#pragma once

#include <Eigen/Core>

#include "roughcocycle/grid_path.hpp"
#include "roughcocycle/rough_core.hpp"

namespace rough {

// Smoothing width as a whole number of grid cells, so every integrand below
// is exactly piecewise polynomial and the quadrature rules are exact.
struct SmoothingParams {
    int delta_cells = 1;
    double delta(double mesh) const { return delta_cells * mesh; }
};

// Snap a width to the grid; throws unless delta is within 1e-9 relative of an
// integer multiple of the mesh.
SmoothingParams make_smoothing_params(double delta, const TimeGrid& grid);

// Nearest integer multiple (used where nominal widths are snapped on purpose).
SmoothingParams nearest_smoothing_params(double delta, const TimeGrid& grid);

// w_delta(t) = int_0^t (w(r+delta) - w(r))/delta dr on the target window,
// oriented for t < 0, anchored at w_delta(0) = 0. The integrand is piecewise
// linear under the interpolant convention, so the per-cell trapezoid rule is
// exact. Requires the source to extend delta beyond the window on the right
// and the window to contain time 0.
VectorPath smooth_path(const VectorPath& omega, SmoothingParams params, IndexWindow window);

// w_delta'(t_k) = (w(t_k + delta) - w(t_k))/delta.
Eigen::VectorXd smooth_derivative(const VectorPath& omega, SmoothingParams params, int t_index);

// Exact second-order process of w_delta on the window, accumulated into the
// cumulative representation. Per cell the integrand is a cubic polynomial, so
// per-cell Simpson quadrature is exact; the lift is geometric to rounding.
AreaField smooth_area(const VectorPath& omega, SmoothingParams params, IndexWindow window);

RoughPathLift smooth_lift(const VectorPath& omega, SmoothingParams params, IndexWindow window);

// X_delta = omega_delta - omega, pointwise on a shared grid.
VectorPath diff_process(const VectorPath& omega, const VectorPath& omega_delta);

}  // namespace rough
