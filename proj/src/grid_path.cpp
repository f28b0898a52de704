#include "roughcocycle/grid_path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rough {

std::optional<int> TimeGrid::index_of_zero() const {
    if (mesh <= 0.0) return std::nullopt;
    int k = static_cast<int>(std::llround(-t_start / mesh));
    if (k < 0 || k > n_cells) return std::nullopt;
    if (std::abs(time(k)) > 1e-9 * mesh) return std::nullopt;
    return k;
}

TimeGrid make_grid(double t_start, double t_end, int n_cells) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end))
        throw std::invalid_argument("make_grid: non-finite bounds");
    if (n_cells < 1)
        throw std::invalid_argument("make_grid: need at least one cell");
    if (!(t_end > t_start))
        throw std::invalid_argument("make_grid: t_end must exceed t_start");
    TimeGrid g{t_start, n_cells, (t_end - t_start) / n_cells};
    if (t_start < 0.0 && t_end > 0.0 && !g.index_of_zero())
        throw std::invalid_argument("make_grid: grid crosses zero but no grid point hits it");
    return g;
}

VectorPath::VectorPath(TimeGrid grid, int dim)
    : grid_(grid), dim_(dim), values_(static_cast<size_t>(grid.n_points()) * dim, 0.0) {
    if (dim < 1) throw std::invalid_argument("VectorPath: dim must be positive");
}

VectorPath::VectorPath(TimeGrid grid, int dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
    if (dim < 1) throw std::invalid_argument("VectorPath: dim must be positive");
    if (values_.size() != static_cast<size_t>(grid.n_points()) * dim)
        throw std::invalid_argument("VectorPath: value count must be (n_cells+1)*dim");
}

bool VectorPath::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double holder_seminorm(const VectorPath& path, double beta, IndexWindow window) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("holder_seminorm: beta must lie in (0,1)");
    if (window.first < 0 || window.last > path.grid().n_cells || window.first >= window.last)
        throw std::invalid_argument("holder_seminorm: empty or out-of-range window");
    const int m = path.dim();
    const int n = window.n_cells();
    const double h = path.grid().mesh;
    std::vector<double> inv_pow(n + 1, 0.0);
    for (int l = 1; l <= n; ++l) inv_pow[l] = std::pow(static_cast<double>(l) * h, -beta);
    double sup = 0.0;
    for (int i = window.first; i < window.last; ++i) {
        const double* pi = path.point(i);
        for (int j = i + 1; j <= window.last; ++j) {
            const double* pj = path.point(j);
            double d = 0.0;
            for (int c = 0; c < m; ++c) d = std::max(d, std::abs(pj[c] - pi[c]));
            sup = std::max(sup, d * inv_pow[j - i]);
        }
    }
    return sup;
}

double holder_seminorm(const VectorPath& path, double beta) {
    return holder_seminorm(path, beta, IndexWindow{0, path.grid().n_cells});
}

VectorPath wiener_shift(const VectorPath& path, int tau_cells) {
    const int n = path.grid().n_cells;
    if (tau_cells < 0 || tau_cells > n)
        throw std::invalid_argument("wiener_shift: shift exceeds grid extent");
    if (tau_cells == n)
        throw std::invalid_argument("wiener_shift: truncated grid is empty");
    TimeGrid g{path.grid().t_start, n - tau_cells, path.grid().mesh};
    VectorPath out(g, path.dim());
    const int m = path.dim();
    const double* base = path.point(tau_cells);
    for (int k = 0; k <= g.n_cells; ++k) {
        const double* p = path.point(k + tau_cells);
        for (int j = 0; j < m; ++j) out.at(k, j) = p[j] - base[j];
    }
    return out;
}

TimeGrid subgrid(const TimeGrid& grid, IndexWindow window) {
    if (window.first < 0 || window.last > grid.n_cells || window.first >= window.last)
        throw std::invalid_argument("subgrid: invalid window");
    return TimeGrid{grid.time(window.first), window.n_cells(), grid.mesh};
}

VectorPath restrict_path(const VectorPath& path, IndexWindow window) {
    TimeGrid g = subgrid(path.grid(), window);
    const int m = path.dim();
    std::vector<double> vals(static_cast<size_t>(g.n_points()) * m);
    std::copy(path.point(window.first), path.point(window.first) + vals.size(), vals.begin());
    return VectorPath(g, m, std::move(vals));
}

VectorPath path_difference(const VectorPath& a, const VectorPath& b) {
    if (!(a.grid() == b.grid()) || a.dim() != b.dim())
        throw std::invalid_argument("path_difference: grid or dimension mismatch");
    VectorPath out(a.grid(), a.dim());
    for (int k = 0; k < a.n_points(); ++k)
        for (int j = 0; j < a.dim(); ++j) out.at(k, j) = a.value(k, j) - b.value(k, j);
    return out;
}

void write_path_csv(const VectorPath& path, const std::string& filename,
                    const std::string& value_prefix) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("write_path_csv: cannot open " + filename);
    out << "t";
    for (int j = 1; j <= path.dim(); ++j) out << "," << value_prefix << j;
    out << "\n";
    char buf[32];
    for (int k = 0; k < path.n_points(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", path.grid().time(k));
        out << buf;
        for (int j = 0; j < path.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", path.value(k, j));
            out << "," << buf;
        }
        out << "\n";
    }
}

}  // namespace rough
