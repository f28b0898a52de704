#include "roughcocycle.h"

#include <random>
#include <string>

#include "roughcocycle/analytic_cov.hpp"
#include "roughcocycle/config.hpp"
#include "roughcocycle/experiments.hpp"
#include "roughcocycle/fields.hpp"
#include "roughcocycle/gaussian_driver.hpp"
#include "roughcocycle/rde.hpp"
#include "roughcocycle/smoothing.hpp"
#include "roughcocycle/variation.hpp"

using namespace rough;

struct rc_grid {
    TimeGrid grid;
};
struct rc_path {
    VectorPath path;
};
struct rc_lift {
    RoughPathLift lift;
};
struct rc_config {
    ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

const char* store_error(const std::string& msg) {
    g_last_error = msg;
    return g_last_error.c_str();
}

template <typename Fn>
rc_status guarded(Fn&& fn) {
    try {
        fn();
        return RC_OK;
    } catch (const SolverDivergence& e) {
        store_error(e.what());
        return RC_SOLVER_DIVERGED;
    } catch (const std::invalid_argument& e) {
        store_error(e.what());
        return RC_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        store_error(e.what());
        return RC_RUNTIME_ERROR;
    }
}

Vector to_vector(const double* xi, int d) {
    if (!xi || d < 1) throw std::invalid_argument("null or empty initial condition");
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = xi[i];
    return v;
}

template <typename T>
const T& deref(const T* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string("null ") + what);
    return *p;
}

std::string checked_str(const char* s, const char* what) {
    if (!s) throw std::invalid_argument(std::string("null ") + what);
    return s;
}

}  // namespace

extern "C" {

const char* rc_last_error(void) { return g_last_error.c_str(); }

rc_status rc_grid_create(double t_start, double t_end, int n_cells, rc_grid** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_grid{make_grid(t_start, t_end, n_cells)};
    });
}

void rc_grid_destroy(rc_grid* grid) { delete grid; }

int rc_grid_cells(const rc_grid* grid) { return grid ? grid->grid.n_cells : 0; }

double rc_grid_mesh(const rc_grid* grid) { return grid ? grid->grid.mesh : 0.0; }

double rc_grid_time(const rc_grid* grid, int k) { return grid ? grid->grid.time(k) : 0.0; }

void rc_path_destroy(rc_path* path) { delete path; }

int rc_path_dim(const rc_path* path) { return path ? path->path.dim() : 0; }

int rc_path_points(const rc_path* path) { return path ? path->path.n_points() : 0; }

rc_status rc_path_value(const rc_path* path, int k, int j, double* out) {
    return guarded([&] {
        const auto& p = deref(path, "path").path;
        deref(out, "output pointer");
        if (k < 0 || k >= p.n_points() || j < 0 || j >= p.dim())
            throw std::invalid_argument("rc_path_value: index out of range");
        *out = p.value(k, j);
    });
}

rc_status rc_path_write_csv(const rc_path* path, const char* filename) {
    return guarded([&] { write_path_csv(deref(path, "path").path, checked_str(filename, "filename")); });
}

rc_status rc_path_difference(const rc_path* a, const rc_path* b, rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_path{path_difference(deref(a, "path").path, deref(b, "path").path)};
    });
}

rc_status rc_wiener_shift(const rc_path* path, int tau_cells, rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_path{wiener_shift(deref(path, "path").path, tau_cells)};
    });
}

rc_status rc_holder_seminorm(const rc_path* path, double beta, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = holder_seminorm(deref(path, "path").path, beta);
    });
}

uint64_t rc_substream_seed(uint64_t master_seed, uint64_t stream_index) {
    return substream_seed(RngStream{master_seed, stream_index});
}

rc_status rc_sample_bm(const rc_grid* grid, int dim, uint64_t master_seed, uint64_t stream_index,
                       rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_path{
            sample_bm(deref(grid, "grid").grid, dim, RngStream{master_seed, stream_index})};
    });
}

rc_status rc_sample_fbm(const rc_grid* grid, int dim, double hurst, uint64_t master_seed,
                        uint64_t stream_index, rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_path{sample_fbm(deref(grid, "grid").grid, HurstModel{hurst, dim},
                                      RngStream{master_seed, stream_index})};
    });
}

rc_status rc_smooth_path(const rc_path* omega, int delta_cells, int window_first, int window_last,
                         rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_path{smooth_path(deref(omega, "path").path, SmoothingParams{delta_cells},
                                       IndexWindow{window_first, window_last})};
    });
}

rc_status rc_smooth_lift(const rc_path* omega, int delta_cells, int window_first, int window_last,
                         rc_lift** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_lift{smooth_lift(deref(omega, "path").path, SmoothingParams{delta_cells},
                                       IndexWindow{window_first, window_last})};
    });
}

void rc_lift_destroy(rc_lift* lift) { delete lift; }

rc_status rc_lift_smooth(const rc_path* path, rc_lift** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_lift{lift_smooth(deref(path, "path").path)};
    });
}

rc_status rc_lift_path(const rc_lift* lift, rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_path{deref(lift, "lift").lift.path};
    });
}

rc_status rc_lift_write_csv(const rc_lift* lift, const char* filename) {
    return guarded(
        [&] { write_lift_csv(deref(lift, "lift").lift, checked_str(filename, "filename")); });
}

rc_status rc_area_lookup(const rc_lift* lift, int s_idx, int t_idx, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        Matrix x = area_lookup(deref(lift, "lift").lift, s_idx, t_idx);
        const int m = static_cast<int>(x.rows());
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) out[r * m + c] = x(r, c);
    });
}

rc_status rc_shift_lift(const rc_lift* lift, int tau_cells, rc_lift** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_lift{shift_lift(deref(lift, "lift").lift, tau_cells)};
    });
}

rc_status rc_rough_metric(const rc_lift* a, const rc_lift* b, double beta, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = rough_metric(deref(a, "lift").lift, deref(b, "lift").lift, beta);
    });
}

rc_status rc_homogeneous_norm(const rc_lift* lift, double beta, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = homogeneous_norm(deref(lift, "lift").lift, beta);
    });
}

rc_status rc_symmetry_defect(const rc_lift* lift, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = symmetry_defect(deref(lift, "lift").lift);
    });
}

rc_status rc_chen_defect(const rc_lift* lift, int n_triples, uint64_t seed, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        const auto& l = deref(lift, "lift").lift;
        if (n_triples < 1) throw std::invalid_argument("rc_chen_defect: need at least one triple");
        const int n = l.grid().n_points();
        if (n < 3) throw std::invalid_argument("rc_chen_defect: grid too small for triples");
        std::mt19937_64 eng(seed);
        std::vector<std::array<int, 3>> triples;
        triples.reserve(n_triples);
        for (int i = 0; i < n_triples; ++i) {
            int a = static_cast<int>(eng() % n), b = static_cast<int>(eng() % n),
                c = static_cast<int>(eng() % n);
            int lo = std::min({a, b, c}), hi = std::max({a, b, c});
            int mid = a + b + c - lo - hi;
            if (lo == mid || mid == hi) {
                --i;
                continue;
            }
            triples.push_back({lo, mid, hi});
        }
        *out = chen_defect(l, triples);
    });
}

rc_status rc_sigma2_x_delta(double u, double delta, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = sigma2_x_delta(u, delta);
    });
}

rc_status rc_cov_i(double u, double delta, double hurst, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = cov_i(u, delta, hurst);
    });
}

rc_status rc_cov_j(double u, double delta, double hurst, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = cov_j(u, delta, hurst);
    });
}

rc_status rc_cov_k(double u, double delta, double hurst, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = cov_k(u, delta, hurst);
    });
}

rc_status rc_constant_m(double rho, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = constant_m(rho);
    });
}

rc_status rc_bound_rho_var_x_delta(double delta, double rho, double s, double t, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = bound_rho_var_x_delta(delta, rho, s, t);
    });
}

rc_status rc_bound_rho_var_bm(double horizon, double rho, double s, double t, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = bound_rho_var_bm(horizon, rho, s, t);
    });
}

rc_status rc_rho_variation_bm(const double* points, int n_points, double rho, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        deref(points, "points");
        std::vector<double> pts(points, points + n_points);
        *out = rho_variation_bruteforce(rect_cov_from_sigma2(bm_model()), pts, rho);
    });
}

rc_status rc_rho_variation_x_delta(double delta, const double* points, int n_points, double rho,
                                   double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        deref(points, "points");
        std::vector<double> pts(points, points + n_points);
        *out = rho_variation_bruteforce(rect_cov_from_sigma2(x_delta_model(delta)), pts, rho);
    });
}

rc_status rc_solve_rde(const rc_lift* lift, const char* field, const double* xi, int d,
                       rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        const VectorField& vf = field_by_name(checked_str(field, "field name"));
        ControlledPath sol = solve_rde(vf, deref(lift, "lift").lift, to_vector(xi, d));
        *out = new rc_path{sol.values_as_path()};
    });
}

rc_status rc_solve_ode_rk4(const rc_path* omega_source, int delta_cells, const char* field,
                           const double* xi, int d, int window_first, int window_last,
                           rc_path** out) {
    return guarded([&] {
        deref(out, "output pointer");
        const VectorField& vf = field_by_name(checked_str(field, "field name"));
        *out = new rc_path{solve_ode_rk4(vf, deref(omega_source, "path").path,
                                         SmoothingParams{delta_cells}, to_vector(xi, d),
                                         IndexWindow{window_first, window_last})};
    });
}

rc_status rc_cocycle_phi_rough(const rc_lift* lift, const char* field, const double* xi, int d,
                               int t_index, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        const VectorField& vf = field_by_name(checked_str(field, "field name"));
        Vector v = cocycle_phi_rough(vf, deref(lift, "lift").lift, to_vector(xi, d), t_index);
        for (int i = 0; i < d; ++i) out[i] = v(i);
    });
}

rc_status rc_cocycle_phi_rk4(const rc_path* omega_source, int delta_cells, const char* field,
                             const double* xi, int d, int t_index, double* out) {
    return guarded([&] {
        deref(out, "output pointer");
        const VectorField& vf = field_by_name(checked_str(field, "field name"));
        Vector v = cocycle_phi_rk4(vf, deref(omega_source, "path").path,
                                   SmoothingParams{delta_cells}, to_vector(xi, d), t_index);
        for (int i = 0; i < d; ++i) out[i] = v(i);
    });
}

rc_status rc_config_default(rc_config** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_config{default_config()};
    });
}

rc_status rc_config_load(const char* path, rc_config** out) {
    return guarded([&] {
        deref(out, "output pointer");
        *out = new rc_config{load_config(checked_str(path, "path"))};
    });
}

void rc_config_destroy(rc_config* config) { delete config; }

rc_status rc_config_set(rc_config* config, const char* key, const char* value) {
    return guarded([&] {
        if (!config) throw std::invalid_argument("null config");
        set_config_value(config->config, checked_str(key, "key"), checked_str(value, "value"));
    });
}

rc_status rc_config_write(const rc_config* config, const char* path) {
    return guarded(
        [&] { write_config(deref(config, "config").config, checked_str(path, "path")); });
}

rc_status rc_run_command(const char* name, const rc_config* config, int* all_pass) {
    return guarded([&] {
        deref(all_pass, "output pointer");
        CommandOutput out = run_command(checked_str(name, "name"), deref(config, "config").config);
        *all_pass = out.all_pass ? 1 : 0;
    });
}

}  // extern "C"
