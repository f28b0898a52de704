#include "roughcocycle/rde.hpp"

#include <cmath>

namespace rough {

Eigen::MatrixXd VectorField::eval(const Vector& y) const {
    Eigen::MatrixXd out(d, m);
    std::vector<double> buf(static_cast<size_t>(d) * m);
    f(y.data(), buf.data());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = buf[static_cast<size_t>(i) * m + j];
    return out;
}

ControlledPath::ControlledPath(VectorPath driver, int dim_y)
    : driver_(std::move(driver)),
      dim_y_(dim_y),
      y_(static_cast<size_t>(driver_.n_points()) * dim_y, 0.0),
      yp_(static_cast<size_t>(driver_.n_points()) * dim_y * driver_.dim(), 0.0) {
    if (dim_y < 1) throw std::invalid_argument("ControlledPath: dim_y must be positive");
}

Vector ControlledPath::remainder(int s_idx, int t_idx) const {
    if (s_idx < 0 || t_idx > grid().n_cells || s_idx > t_idx)
        throw std::invalid_argument("ControlledPath::remainder: bad indices");
    const int m = dim_m();
    Vector out(dim_y_);
    for (int i = 0; i < dim_y_; ++i) {
        double acc = y(t_idx, i) - y(s_idx, i);
        for (int l = 0; l < m; ++l)
            acc -= yp(s_idx, i, l) * (driver_.value(t_idx, l) - driver_.value(s_idx, l));
        out(i) = acc;
    }
    return out;
}

VectorPath ControlledPath::values_as_path() const {
    VectorPath out(grid(), dim_y_);
    for (int k = 0; k < out.n_points(); ++k)
        for (int i = 0; i < dim_y_; ++i) out.at(k, i) = y(k, i);
    return out;
}

ControlledPath compose_controlled(const VectorField& field, const ControlledPath& cp) {
    if (field.d != cp.dim_y() || field.m != cp.dim_m())
        throw std::invalid_argument("compose_controlled: field/path dimension mismatch");
    const int d = field.d, m = field.m;
    ControlledPath out(cp.driver(), d * m);
    std::vector<double> fv(static_cast<size_t>(d) * m), dfv(static_cast<size_t>(d) * m * d);
    for (int t = 0; t < cp.grid().n_points(); ++t) {
        field.f(cp.y_point(t), fv.data());
        field.df(cp.y_point(t), dfv.data());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < m; ++j) {
                out.y_at(t, i * m + j) = fv[static_cast<size_t>(i) * m + j];
                for (int l = 0; l < m; ++l) {
                    double acc = 0.0;
                    for (int k = 0; k < d; ++k)
                        acc += dfv[(static_cast<size_t>(i) * m + j) * d + k] * cp.yp(t, k, l);
                    out.yp_at(t, i * m + j, l) = acc;
                }
            }
    }
    return out;
}

namespace {

// [Xi(u,v)]_i = sum_j f_ij dw_j + sum_{j,k,l} df_ijk Yp_kl Area_lj
void add_xi_cell(const VectorField& field, const double* fv, const double* dfv,
                 const ControlledPath& cp, int u, const double* dw, const Matrix& cell_area,
                 double* acc) {
    const int d = field.d, m = field.m;
    for (int i = 0; i < d; ++i) {
        double v = 0.0;
        for (int j = 0; j < m; ++j) {
            v += fv[static_cast<size_t>(i) * m + j] * dw[j];
            for (int k = 0; k < d; ++k) {
                double dfijk = dfv[(static_cast<size_t>(i) * m + j) * d + k];
                if (dfijk == 0.0) continue;
                for (int l = 0; l < m; ++l) v += dfijk * cp.yp(u, k, l) * cell_area(l, j);
            }
        }
        acc[i] += v;
    }
}

}  // namespace

Vector rough_integral(const VectorField& field, const ControlledPath& cp,
                      const RoughPathLift& lift, int s_idx, int t_idx) {
    if (!(cp.grid() == lift.grid()))
        throw std::invalid_argument("rough_integral: controlled path and lift grids differ");
    if (field.d != cp.dim_y() || field.m != lift.dim())
        throw std::invalid_argument("rough_integral: dimension mismatch");
    if (s_idx < 0 || t_idx > lift.grid().n_cells || s_idx > t_idx)
        throw std::invalid_argument("rough_integral: bad window");
    const int d = field.d, m = field.m;
    std::vector<double> fv(static_cast<size_t>(d) * m), dfv(static_cast<size_t>(d) * m * d);
    std::vector<double> dw(m);
    Vector out = Vector::Zero(d);
    for (int u = s_idx; u < t_idx; ++u) {
        field.f(cp.y_point(u), fv.data());
        field.df(cp.y_point(u), dfv.data());
        for (int j = 0; j < m; ++j)
            dw[j] = lift.path.value(u + 1, j) - lift.path.value(u, j);
        Matrix cell = area_lookup(lift, u, u + 1);
        add_xi_cell(field, fv.data(), dfv.data(), cp, u, dw.data(), cell, out.data());
    }
    return out;
}

ControlledPath solve_rde(const VectorField& field, const RoughPathLift& lift, const Vector& xi,
                         IndexWindow window) {
    if (field.m != lift.dim())
        throw std::invalid_argument("solve_rde: field/driver dimension mismatch");
    if (xi.size() != field.d) throw std::invalid_argument("solve_rde: bad initial condition size");
    if (window.first < 0 || window.last > lift.grid().n_cells || window.first >= window.last)
        throw std::invalid_argument("solve_rde: invalid window");
    if (!lift.path.all_finite() || !lift.area.all_finite())
        throw std::invalid_argument("solve_rde: lift has non-finite entries");
    const int d = field.d, m = field.m;
    ControlledPath out(restrict_path(lift.path, window), d);
    std::vector<double> fv(static_cast<size_t>(d) * m), dfv(static_cast<size_t>(d) * m * d);
    for (int i = 0; i < d; ++i) out.y_at(0, i) = xi(i);
    const int nw = window.n_cells();
    for (int k = 0; k <= nw; ++k) {
        field.f(out.y_point(k), fv.data());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < m; ++j) out.yp_at(k, i, j) = fv[static_cast<size_t>(i) * m + j];
        if (k == nw) break;
        field.df(out.y_point(k), dfv.data());
        int g = window.first + k;
        Matrix cell = area_lookup(lift, g, g + 1);
        for (int i = 0; i < d; ++i) {
            double step = 0.0;
            for (int j = 0; j < m; ++j) {
                step += fv[static_cast<size_t>(i) * m + j] *
                        (lift.path.value(g + 1, j) - lift.path.value(g, j));
                for (int kk = 0; kk < d; ++kk) {
                    double dfijk = dfv[(static_cast<size_t>(i) * m + j) * d + kk];
                    if (dfijk == 0.0) continue;
                    for (int l = 0; l < m; ++l)
                        step += dfijk * fv[static_cast<size_t>(kk) * m + l] * cell(l, j);
                }
            }
            double next = out.y(k, i) + step;
            if (!std::isfinite(next))
                throw SolverDivergence("solve_rde: non-finite state at step " +
                                       std::to_string(k + 1), k + 1);
            out.y_at(k + 1, i) = next;
        }
    }
    return out;
}

ControlledPath solve_rde(const VectorField& field, const RoughPathLift& lift, const Vector& xi) {
    return solve_rde(field, lift, xi, IndexWindow{0, lift.grid().n_cells});
}

VectorPath solve_ode_rk4(const VectorField& field, const VectorPath& omega_source,
                         SmoothingParams params, const Vector& xi, IndexWindow window) {
    if (field.m != omega_source.dim())
        throw std::invalid_argument("solve_ode_rk4: field/driver dimension mismatch");
    if (xi.size() != field.d)
        throw std::invalid_argument("solve_ode_rk4: bad initial condition size");
    if (window.first < 0 || window.first >= window.last ||
        window.last + params.delta_cells > omega_source.grid().n_cells)
        throw std::invalid_argument("solve_ode_rk4: window leaves the extended source grid");
    const int d = field.d, m = field.m;
    const int kd = params.delta_cells;
    const double h = omega_source.grid().mesh;
    const double delta = params.delta(h);
    TimeGrid wgrid = subgrid(omega_source.grid(), window);
    VectorPath out(wgrid, d);
    for (int i = 0; i < d; ++i) out.at(0, i) = xi(i);

    auto deriv_at = [&](int src_idx, std::vector<double>& g) {
        const double* lo = omega_source.point(src_idx);
        const double* hi = omega_source.point(src_idx + kd);
        for (int c = 0; c < m; ++c) g[c] = (hi[c] - lo[c]) / delta;
    };

    std::vector<double> g0(m), g1(m), gm(m), y(d), ytmp(d);
    std::vector<double> fv(static_cast<size_t>(d) * m);
    std::vector<double> k1(d), k2(d), k3(d), k4(d);
    auto rhs = [&](const std::vector<double>& state, const std::vector<double>& g,
                   std::vector<double>& k) {
        field.f(state.data(), fv.data());
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < m; ++j) acc += fv[static_cast<size_t>(i) * m + j] * g[j];
            k[i] = acc;
        }
    };

    for (int i = 0; i < d; ++i) y[i] = xi(i);
    for (int step = 0; step < wgrid.n_cells; ++step) {
        int src = window.first + step;
        deriv_at(src, g0);
        deriv_at(src + 1, g1);
        for (int c = 0; c < m; ++c) gm[c] = 0.5 * (g0[c] + g1[c]);

        rhs(y, g0, k1);
        for (int i = 0; i < d; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(ytmp, gm, k2);
        for (int i = 0; i < d; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(ytmp, gm, k3);
        for (int i = 0; i < d; ++i) ytmp[i] = y[i] + h * k3[i];
        rhs(ytmp, g1, k4);
        for (int i = 0; i < d; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            if (!std::isfinite(y[i]))
                throw SolverDivergence("solve_ode_rk4: non-finite state at step " +
                                       std::to_string(step + 1), step + 1);
            out.at(step + 1, i) = y[i];
        }
    }
    return out;
}

Vector cocycle_phi_rough(const VectorField& field, const RoughPathLift& lift, const Vector& xi,
                         int t_index) {
    if (t_index == 0) return xi;
    ControlledPath sol = solve_rde(field, lift, xi, IndexWindow{0, t_index});
    Vector out(field.d);
    for (int i = 0; i < field.d; ++i) out(i) = sol.y(t_index, i);
    return out;
}

Vector cocycle_phi_rk4(const VectorField& field, const VectorPath& omega_source,
                       SmoothingParams params, const Vector& xi, int t_index) {
    if (t_index == 0) return xi;
    VectorPath sol = solve_ode_rk4(field, omega_source, params, xi, IndexWindow{0, t_index});
    Vector out(field.d);
    for (int i = 0; i < field.d; ++i) out(i) = sol.value(t_index, i);
    return out;
}

}  // namespace rough
