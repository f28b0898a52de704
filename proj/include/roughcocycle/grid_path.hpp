#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rough {

// Uniform time grid t_k = t_start + k*mesh, k = 0..n_cells.
// Times are always reconstructed from the integer index so that long grids
// do not accumulate drift.
struct TimeGrid {
    double t_start = 0.0;
    int n_cells = 0;
    double mesh = 0.0;

    int n_points() const { return n_cells + 1; }
    double time(int k) const { return t_start + static_cast<double>(k) * mesh; }
    double t_end() const { return time(n_cells); }

    // Index k with t_k == 0 (within 1e-9*mesh), if the grid crosses zero.
    std::optional<int> index_of_zero() const;

    bool operator==(const TimeGrid& other) const = default;
};

// Inclusive index pair [first, last] into a grid.
struct IndexWindow {
    int first = 0;
    int last = 0;
    int n_cells() const { return last - first; }
};

TimeGrid make_grid(double t_start, double t_end, int n_cells);

// Grid-sampled path with values in R^m, interpreted everywhere as its
// piecewise-linear interpolant. Storage is flat, point-major.
class VectorPath {
public:
    VectorPath() = default;
    VectorPath(TimeGrid grid, int dim);
    VectorPath(TimeGrid grid, int dim, std::vector<double> values);

    const TimeGrid& grid() const { return grid_; }
    int dim() const { return dim_; }
    int n_points() const { return grid_.n_points(); }

    double value(int k, int j) const { return values_[static_cast<size_t>(k) * dim_ + j]; }
    double& at(int k, int j) { return values_[static_cast<size_t>(k) * dim_ + j]; }
    const double* point(int k) const { return values_.data() + static_cast<size_t>(k) * dim_; }
    const std::vector<double>& values() const { return values_; }

    bool all_finite() const;

private:
    TimeGrid grid_;
    int dim_ = 0;
    std::vector<double> values_;
};

// sup over grid pairs s < t inside `window` of |X(t)-X(s)|_inf / (t-s)^beta.
double holder_seminorm(const VectorPath& path, double beta, IndexWindow window);
double holder_seminorm(const VectorPath& path, double beta);

// Wiener shift by a whole number of cells: result value j is
// path(j + tau_cells) - path(tau_cells) on the grid truncated by tau_cells
// cells on the right. On grids starting at time 0 this is exactly
// theta_tau w = w(.+tau) - w(tau) with tau = tau_cells*mesh.
VectorPath wiener_shift(const VectorPath& path, int tau_cells);

// Restriction to a window; values are copied unchanged.
VectorPath restrict_path(const VectorPath& path, IndexWindow window);

TimeGrid subgrid(const TimeGrid& grid, IndexWindow window);

// Pointwise difference a - b on a shared grid.
VectorPath path_difference(const VectorPath& a, const VectorPath& b);

// CSV dump: header "t,x1,...,xm", one row per grid point, 17 significant
// digits; value_prefix renames the value columns (e.g. "y" for trajectories).
void write_path_csv(const VectorPath& path, const std::string& filename,
                    const std::string& value_prefix = "x");

}  // namespace rough
