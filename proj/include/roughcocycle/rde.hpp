#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>

#include "roughcocycle/grid_path.hpp"
#include "roughcocycle/rough_core.hpp"
#include "roughcocycle/smoothing.hpp"

namespace rough {

using Vector = Eigen::VectorXd;

// Coefficient field f: R^d -> R^{d x m} with derivative df: R^d -> R^{d x m x d}.
// Flat layouts: f value f[i*m + j]; derivative df[(i*m + j)*d + k] = d f_ij / d y_k.
struct VectorField {
    std::string name;
    int d = 0;
    int m = 0;
    std::function<void(const double* y, double* f)> f;
    std::function<void(const double* y, double* df)> df;
    double bound_f = 0.0;   // sup norms when known, 0 if unbounded
    double bound_df = 0.0;
    double bound_d2f = 0.0;

    Eigen::MatrixXd eval(const Vector& y) const;
};

// Path Y with Gubinelli derivative Y' against a driver path: increments are
// Y(t)-Y(s) = Y'(s)(w(t)-w(s)) + R^Y(s,t).
class ControlledPath {
public:
    ControlledPath(VectorPath driver, int dim_y);

    const TimeGrid& grid() const { return driver_.grid(); }
    const VectorPath& driver() const { return driver_; }
    int dim_y() const { return dim_y_; }
    int dim_m() const { return driver_.dim(); }

    double y(int k, int i) const { return y_[static_cast<size_t>(k) * dim_y_ + i]; }
    double& y_at(int k, int i) { return y_[static_cast<size_t>(k) * dim_y_ + i]; }
    const double* y_point(int k) const { return y_.data() + static_cast<size_t>(k) * dim_y_; }
    // derivative entry (i, l): row state component, column driver component
    double yp(int k, int i, int l) const {
        return yp_[(static_cast<size_t>(k) * dim_y_ + i) * dim_m() + l];
    }
    double& yp_at(int k, int i, int l) {
        return yp_[(static_cast<size_t>(k) * dim_y_ + i) * dim_m() + l];
    }

    // R^Y(s,t) = Y(t) - Y(s) - Y'(s) (w(t) - w(s))
    Vector remainder(int s_idx, int t_idx) const;

    VectorPath values_as_path() const;

private:
    VectorPath driver_;
    int dim_y_;
    std::vector<double> y_;
    std::vector<double> yp_;
};

// f(Y) as a controlled path: values are f(Y(t)) flattened row-major to
// dimension d*m, derivative (f(Y))' = Df(Y) Y'.
ControlledPath compose_controlled(const VectorField& field, const ControlledPath& cp);

// Compensated Riemann sum over the grid cells of
// Xi(u,v) = f(Y(u)) dw(u,v) + Df(Y(u)) Y'(u) Area(u,v),
// contracting [Df(Y)Y' A]_i = sum_{j,k,l} df_ijk Y'_kl A_lj.
Vector rough_integral(const VectorField& field, const ControlledPath& cp,
                      const RoughPathLift& lift, int s_idx, int t_idx);

// Explicit Davie-type step along the solution of dY = f(Y) dw:
// Y_{k+1} = Y_k + f(Y_k) dw_k + Df(Y_k) f(Y_k) Area(t_k, t_{k+1}),
// with Y' = f(Y) recorded at every grid point.
ControlledPath solve_rde(const VectorField& field, const RoughPathLift& lift, const Vector& xi,
                         IndexWindow window);
ControlledPath solve_rde(const VectorField& field, const RoughPathLift& lift, const Vector& xi);

// Classical RK4 for the random ODE dY = f(Y) w_delta'(t) dt, one step per
// grid cell; w_delta' is evaluated exactly at grid points from the source
// path and linearly interpolated at half steps (exact: it is piecewise
// linear with knots on the grid).
VectorPath solve_ode_rk4(const VectorField& field, const VectorPath& omega_source,
                         SmoothingParams params, const Vector& xi, IndexWindow window);

// Cocycle evaluation phi(t, w, xi) = Y(t); the window must start at the
// lift's (resp. source's) first grid point with time 0 at its left end.
Vector cocycle_phi_rough(const VectorField& field, const RoughPathLift& lift, const Vector& xi,
                         int t_index);
Vector cocycle_phi_rk4(const VectorField& field, const VectorPath& omega_source,
                       SmoothingParams params, const Vector& xi, int t_index);

// Thrown when a solver state leaves the finite range.
struct SolverDivergence : std::runtime_error {
    SolverDivergence(const std::string& what, int step) : std::runtime_error(what), step_index(step) {}
    int step_index;
};

}  // namespace rough
