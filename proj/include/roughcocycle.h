/* C ABI for the roughcocycle library.
 *
 * All objects are opaque handles created and destroyed here; every fallible
 * call returns an rc_status and leaves a thread-local message readable via
 * rc_last_error(). Output parameters are written only on RC_OK.
 */
#ifndef ROUGHCOCYCLE_H
#define ROUGHCOCYCLE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rc_status {
    RC_OK = 0,
    RC_INVALID_ARGUMENT = 1,
    RC_RUNTIME_ERROR = 2,
    RC_SOLVER_DIVERGED = 3
} rc_status;

typedef struct rc_grid rc_grid;     /* uniform time grid */
typedef struct rc_path rc_path;     /* grid-sampled vector path */
typedef struct rc_lift rc_lift;     /* rough-path lift (path + area) */
typedef struct rc_config rc_config; /* experiment configuration */

const char* rc_last_error(void);

/* ---- grids ---- */
rc_status rc_grid_create(double t_start, double t_end, int n_cells, rc_grid** out);
void rc_grid_destroy(rc_grid* grid);
int rc_grid_cells(const rc_grid* grid);
double rc_grid_mesh(const rc_grid* grid);
double rc_grid_time(const rc_grid* grid, int k);

/* ---- paths ---- */
void rc_path_destroy(rc_path* path);
int rc_path_dim(const rc_path* path);
int rc_path_points(const rc_path* path);
rc_status rc_path_value(const rc_path* path, int k, int j, double* out);
rc_status rc_path_write_csv(const rc_path* path, const char* filename);
rc_status rc_path_difference(const rc_path* a, const rc_path* b, rc_path** out);
rc_status rc_wiener_shift(const rc_path* path, int tau_cells, rc_path** out);
rc_status rc_holder_seminorm(const rc_path* path, double beta, double* out);

/* ---- Gaussian drivers ---- */
uint64_t rc_substream_seed(uint64_t master_seed, uint64_t stream_index);
rc_status rc_sample_bm(const rc_grid* grid, int dim, uint64_t master_seed, uint64_t stream_index,
                       rc_path** out);
rc_status rc_sample_fbm(const rc_grid* grid, int dim, double hurst, uint64_t master_seed,
                        uint64_t stream_index, rc_path** out);

/* ---- smoothing ---- */
rc_status rc_smooth_path(const rc_path* omega, int delta_cells, int window_first, int window_last,
                         rc_path** out);
rc_status rc_smooth_lift(const rc_path* omega, int delta_cells, int window_first, int window_last,
                         rc_lift** out);

/* ---- lifts ---- */
void rc_lift_destroy(rc_lift* lift);
rc_status rc_lift_smooth(const rc_path* path, rc_lift** out);
rc_status rc_lift_path(const rc_lift* lift, rc_path** out);
rc_status rc_lift_write_csv(const rc_lift* lift, const char* filename);
/* out points to dim*dim doubles, row-major */
rc_status rc_area_lookup(const rc_lift* lift, int s_idx, int t_idx, double* out);
rc_status rc_shift_lift(const rc_lift* lift, int tau_cells, rc_lift** out);
rc_status rc_rough_metric(const rc_lift* a, const rc_lift* b, double beta, double* out);
rc_status rc_homogeneous_norm(const rc_lift* lift, double beta, double* out);
rc_status rc_symmetry_defect(const rc_lift* lift, double* out);
/* Chen defect of the lift's reconstruction over random index triples */
rc_status rc_chen_defect(const rc_lift* lift, int n_triples, uint64_t seed, double* out);

/* ---- closed-form covariances and variation bounds ---- */
rc_status rc_sigma2_x_delta(double u, double delta, double* out);
rc_status rc_cov_i(double u, double delta, double hurst, double* out);
rc_status rc_cov_j(double u, double delta, double hurst, double* out);
rc_status rc_cov_k(double u, double delta, double hurst, double* out);
rc_status rc_constant_m(double rho, double* out);
rc_status rc_bound_rho_var_x_delta(double delta, double rho, double s, double t, double* out);
rc_status rc_bound_rho_var_bm(double horizon, double rho, double s, double t, double* out);
rc_status rc_rho_variation_bm(const double* points, int n_points, double rho, double* out);
rc_status rc_rho_variation_x_delta(double delta, const double* points, int n_points, double rho,
                                   double* out);

/* ---- solvers (coefficient fields by registry name) ---- */
rc_status rc_solve_rde(const rc_lift* lift, const char* field, const double* xi, int d,
                       rc_path** out);
rc_status rc_solve_ode_rk4(const rc_path* omega_source, int delta_cells, const char* field,
                           const double* xi, int d, int window_first, int window_last,
                           rc_path** out);
rc_status rc_cocycle_phi_rough(const rc_lift* lift, const char* field, const double* xi, int d,
                               int t_index, double* out);
rc_status rc_cocycle_phi_rk4(const rc_path* omega_source, int delta_cells, const char* field,
                             const double* xi, int d, int t_index, double* out);

/* ---- experiment configuration and subcommands ---- */
rc_status rc_config_default(rc_config** out);
rc_status rc_config_load(const char* path, rc_config** out);
void rc_config_destroy(rc_config* config);
/* key/value exactly as in a config file line */
rc_status rc_config_set(rc_config* config, const char* key, const char* value);
rc_status rc_config_write(const rc_config* config, const char* path);

/* Runs a subcommand (simulate, solve, covariance-check, variation-check,
 * path-convergence, rds-convergence, cocycle-check, moment-scaling,
 * covariance-table); *all_pass is 1 when every pass flag is true. */
rc_status rc_run_command(const char* name, const rc_config* config, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* ROUGHCOCYCLE_H */
