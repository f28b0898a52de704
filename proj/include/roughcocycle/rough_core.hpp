#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "roughcocycle/grid_path.hpp"

namespace rough {

using Matrix = Eigen::MatrixXd;

// Cumulative second-order process: stores A_k = Area(t_0, t_k) in R^{m x m},
// flat point-major storage, A_0 = 0. Arbitrary Area(s,t) is reconstructed via
// Chen's relation, which therefore holds exactly by construction.
class AreaField {
public:
    AreaField() = default;
    AreaField(TimeGrid grid, int dim);

    const TimeGrid& grid() const { return grid_; }
    int dim() const { return dim_; }
    const double* at(int k) const { return values_.data() + static_cast<size_t>(k) * dim_ * dim_; }
    double* at(int k) { return values_.data() + static_cast<size_t>(k) * dim_ * dim_; }
    bool all_finite() const;

private:
    TimeGrid grid_;
    int dim_ = 0;
    std::vector<double> values_;
};

struct RoughPathLift {
    VectorPath path;
    AreaField area;
    bool geometric = false;

    int dim() const { return path.dim(); }
    const TimeGrid& grid() const { return path.grid(); }
};

// Area(s,t) = A(t) - A(s) - (x(s)-x(t0)) (x(t)-x(s))^T, row index = path
// factor, column index = integrator.
Matrix area_lookup(const RoughPathLift& lift, int s_idx, int t_idx);

// Table of raw areas keyed by (s_idx, t_idx), used to validate direct
// integrators against the cumulative representation.
using AreaTable = std::map<std::pair<int, int>, Matrix>;

// max over the supplied triples s<u<t of the max-entry norm of
// Area(s,t) - Area(s,u) - Area(u,t) - dx(s,u) dx(u,t)^T.
double chen_defect(const VectorPath& path, const AreaTable& raw_area,
                   const std::vector<std::array<int, 3>>& triples);

// Convenience: defect of the lift's own reconstruction over the triples.
double chen_defect(const RoughPathLift& lift, const std::vector<std::array<int, 3>>& triples);

// Exact geometric lift of the piecewise-linear interpolant: per cell the
// area is (1/2) dx dx^T, accumulated through Chen into the cumulative form.
RoughPathLift lift_smooth(const VectorPath& path);

// Holder rough path metric: sup over grid pairs s<t in the window of
// |dX - dY|_inf/(t-s)^beta + |XX - YY|_maxent/(t-s)^(2 beta).
double rough_metric(const RoughPathLift& a, const RoughPathLift& b, double beta, IndexWindow window);
double rough_metric(const RoughPathLift& a, const RoughPathLift& b, double beta);

// |||X|||_beta + sqrt(|||XX|||_{2 beta}), each sup taken separately.
double homogeneous_norm(const RoughPathLift& lift, double beta, IndexWindow window);
double homogeneous_norm(const RoughPathLift& lift, double beta);

// max over grid pairs of |Sym Area(s,t) - (1/2) dx dx^T|, max-entry norm.
double symmetry_defect(const RoughPathLift& lift, IndexWindow window);
double symmetry_defect(const RoughPathLift& lift);

// Path shifted by wiener_shift, areas rebased so that
// area_lookup(shifted, s, t) = area_lookup(original, s+tau, t+tau).
RoughPathLift shift_lift(const RoughPathLift& lift, int tau_cells);

// Restriction to a window with areas rebased at the window start.
RoughPathLift restrict_lift(const RoughPathLift& lift, IndexWindow window);

// CSV dump: t, x1..xm, A11..Amm (A row-major), one row per grid point.
void write_lift_csv(const RoughPathLift& lift, const std::string& filename);

// All (s,u,t) index triples with s<u<t, for small grids.
std::vector<std::array<int, 3>> all_index_triples(int n_points);

}  // namespace rough
