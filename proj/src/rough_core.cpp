#include "roughcocycle/rough_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rough {

namespace {

void check_window(const TimeGrid& grid, IndexWindow w, const char* who) {
    if (w.first < 0 || w.last > grid.n_cells || w.first >= w.last)
        throw std::invalid_argument(std::string(who) + ": empty or out-of-range window");
}

std::vector<double> inv_powers(int n, double h, double expo) {
    std::vector<double> p(n + 1, 0.0);
    for (int l = 1; l <= n; ++l) p[l] = std::pow(static_cast<double>(l) * h, -expo);
    return p;
}

}  // namespace

AreaField::AreaField(TimeGrid grid, int dim)
    : grid_(grid), dim_(dim), values_(static_cast<size_t>(grid.n_points()) * dim * dim, 0.0) {
    if (dim < 1) throw std::invalid_argument("AreaField: dim must be positive");
}

bool AreaField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Matrix area_lookup(const RoughPathLift& lift, int s_idx, int t_idx) {
    const int n = lift.grid().n_cells;
    if (s_idx < 0 || t_idx > n || s_idx > t_idx)
        throw std::invalid_argument("area_lookup: indices out of range or reversed");
    const int m = lift.dim();
    const double* as = lift.area.at(s_idx);
    const double* at = lift.area.at(t_idx);
    const double* p0 = lift.path.point(0);
    const double* ps = lift.path.point(s_idx);
    const double* pt = lift.path.point(t_idx);
    Matrix out(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            out(r, c) = at[r * m + c] - as[r * m + c] - (ps[r] - p0[r]) * (pt[c] - ps[c]);
    return out;
}

double chen_defect(const VectorPath& path, const AreaTable& raw_area,
                   const std::vector<std::array<int, 3>>& triples) {
    const int m = path.dim();
    auto fetch = [&](int i, int j) -> const Matrix& {
        auto it = raw_area.find({i, j});
        if (it == raw_area.end())
            throw std::invalid_argument("chen_defect: missing area entry (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
        return it->second;
    };
    double defect = 0.0;
    for (const auto& [s, u, t] : triples) {
        const Matrix& xst = fetch(s, t);
        const Matrix& xsu = fetch(s, u);
        const Matrix& xut = fetch(u, t);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                double cross = (path.value(u, r) - path.value(s, r)) *
                               (path.value(t, c) - path.value(u, c));
                defect = std::max(defect, std::abs(xst(r, c) - xsu(r, c) - xut(r, c) - cross));
            }
    }
    return defect;
}

double chen_defect(const RoughPathLift& lift, const std::vector<std::array<int, 3>>& triples) {
    AreaTable table;
    for (const auto& [s, u, t] : triples) {
        for (auto [i, j] : {std::pair{s, t}, std::pair{s, u}, std::pair{u, t}})
            if (!table.count({i, j})) table.emplace(std::pair{i, j}, area_lookup(lift, i, j));
    }
    return chen_defect(lift.path, table, triples);
}

RoughPathLift lift_smooth(const VectorPath& path) {
    if (!path.all_finite()) throw std::invalid_argument("lift_smooth: path has non-finite values");
    const int m = path.dim();
    const int n = path.grid().n_cells;
    AreaField area(path.grid(), m);
    const double* p0 = path.point(0);
    for (int k = 0; k < n; ++k) {
        const double* pk = path.point(k);
        const double* pk1 = path.point(k + 1);
        const double* ak = area.at(k);
        double* ak1 = area.at(k + 1);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                double dr = pk1[r] - pk[r];
                double dc = pk1[c] - pk[c];
                ak1[r * m + c] = ak[r * m + c] + 0.5 * dr * dc + (pk[r] - p0[r]) * dc;
            }
    }
    return RoughPathLift{path, std::move(area), true};
}

double rough_metric(const RoughPathLift& a, const RoughPathLift& b, double beta, IndexWindow w) {
    if (!(a.grid() == b.grid()) || a.dim() != b.dim())
        throw std::invalid_argument("rough_metric: lifts must share grid and dimension");
    check_window(a.grid(), w, "rough_metric");
    const int m = a.dim();
    const int n = w.n_cells();
    const double h = a.grid().mesh;
    auto invb = inv_powers(n, h, beta);
    auto inv2b = inv_powers(n, h, 2.0 * beta);

    // Pointwise area difference E_k = A_a(k) - A_b(k); the pair term is then
    // E_t - E_s - (xa(s)-xa(0)) dxa^T + (xb(s)-xb(0)) dxb^T.
    std::vector<double> ediff(static_cast<size_t>(n + 1) * m * m);
    for (int k = 0; k <= n; ++k) {
        const double* aa = a.area.at(w.first + k);
        const double* ab = b.area.at(w.first + k);
        for (int e = 0; e < m * m; ++e) ediff[static_cast<size_t>(k) * m * m + e] = aa[e] - ab[e];
    }
    const double* pa0 = a.path.point(0);
    const double* pb0 = b.path.point(0);
    std::vector<double> ca(m), cb(m), dpa(m), dpb(m);
    double sup = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double* pai = a.path.point(w.first + i);
        const double* pbi = b.path.point(w.first + i);
        for (int c = 0; c < m; ++c) {
            ca[c] = pai[c] - pa0[c];
            cb[c] = pbi[c] - pb0[c];
        }
        const double* ei = ediff.data() + static_cast<size_t>(i) * m * m;
        for (int j = i + 1; j <= n; ++j) {
            const double* paj = a.path.point(w.first + j);
            const double* pbj = b.path.point(w.first + j);
            double pmax = 0.0;
            for (int c = 0; c < m; ++c) {
                dpa[c] = paj[c] - pai[c];
                dpb[c] = pbj[c] - pbi[c];
                pmax = std::max(pmax, std::abs(dpa[c] - dpb[c]));
            }
            const double* ej = ediff.data() + static_cast<size_t>(j) * m * m;
            double amax = 0.0;
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    double v = ej[r * m + c] - ei[r * m + c] - ca[r] * dpa[c] + cb[r] * dpb[c];
                    amax = std::max(amax, std::abs(v));
                }
            sup = std::max(sup, pmax * invb[j - i] + amax * inv2b[j - i]);
        }
    }
    return sup;
}

double rough_metric(const RoughPathLift& a, const RoughPathLift& b, double beta) {
    return rough_metric(a, b, beta, IndexWindow{0, a.grid().n_cells});
}

double homogeneous_norm(const RoughPathLift& lift, double beta, IndexWindow w) {
    check_window(lift.grid(), w, "homogeneous_norm");
    const int m = lift.dim();
    const int n = w.n_cells();
    const double h = lift.grid().mesh;
    auto invb = inv_powers(n, h, beta);
    auto inv2b = inv_powers(n, h, 2.0 * beta);
    const double* p0 = lift.path.point(0);
    std::vector<double> cs(m), dp(m);
    double path_sup = 0.0, area_sup = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double* pi = lift.path.point(w.first + i);
        for (int c = 0; c < m; ++c) cs[c] = pi[c] - p0[c];
        const double* ai = lift.area.at(w.first + i);
        for (int j = i + 1; j <= n; ++j) {
            const double* pj = lift.path.point(w.first + j);
            double pmax = 0.0;
            for (int c = 0; c < m; ++c) {
                dp[c] = pj[c] - pi[c];
                pmax = std::max(pmax, std::abs(dp[c]));
            }
            const double* aj = lift.area.at(w.first + j);
            double amax = 0.0;
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c)
                    amax = std::max(amax, std::abs(aj[r * m + c] - ai[r * m + c] - cs[r] * dp[c]));
            path_sup = std::max(path_sup, pmax * invb[j - i]);
            area_sup = std::max(area_sup, amax * inv2b[j - i]);
        }
    }
    return path_sup + std::sqrt(area_sup);
}

double homogeneous_norm(const RoughPathLift& lift, double beta) {
    return homogeneous_norm(lift, beta, IndexWindow{0, lift.grid().n_cells});
}

double symmetry_defect(const RoughPathLift& lift, IndexWindow w) {
    check_window(lift.grid(), w, "symmetry_defect");
    const int m = lift.dim();
    const double* p0 = lift.path.point(0);
    std::vector<double> cs(m), dp(m);
    double defect = 0.0;
    for (int i = w.first; i < w.last; ++i) {
        const double* pi = lift.path.point(i);
        const double* ai = lift.area.at(i);
        for (int c = 0; c < m; ++c) cs[c] = pi[c] - p0[c];
        for (int j = i + 1; j <= w.last; ++j) {
            const double* pj = lift.path.point(j);
            const double* aj = lift.area.at(j);
            for (int c = 0; c < m; ++c) dp[c] = pj[c] - pi[c];
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    double xrc = aj[r * m + c] - ai[r * m + c] - cs[r] * dp[c];
                    double xcr = aj[c * m + r] - ai[c * m + r] - cs[c] * dp[r];
                    defect = std::max(defect, std::abs(0.5 * (xrc + xcr) - 0.5 * dp[r] * dp[c]));
                }
        }
    }
    return defect;
}

double symmetry_defect(const RoughPathLift& lift) {
    return symmetry_defect(lift, IndexWindow{0, lift.grid().n_cells});
}

RoughPathLift shift_lift(const RoughPathLift& lift, int tau_cells) {
    VectorPath shifted = wiener_shift(lift.path, tau_cells);
    const int m = lift.dim();
    AreaField area(shifted.grid(), m);
    for (int k = 1; k <= shifted.grid().n_cells; ++k) {
        Matrix x = area_lookup(lift, tau_cells, tau_cells + k);
        double* ak = area.at(k);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) ak[r * m + c] = x(r, c);
    }
    return RoughPathLift{std::move(shifted), std::move(area), lift.geometric};
}

RoughPathLift restrict_lift(const RoughPathLift& lift, IndexWindow window) {
    VectorPath path = restrict_path(lift.path, window);
    const int m = lift.dim();
    AreaField area(path.grid(), m);
    for (int k = 1; k <= path.grid().n_cells; ++k) {
        Matrix x = area_lookup(lift, window.first, window.first + k);
        double* ak = area.at(k);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) ak[r * m + c] = x(r, c);
    }
    return RoughPathLift{std::move(path), std::move(area), lift.geometric};
}

void write_lift_csv(const RoughPathLift& lift, const std::string& filename) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("write_lift_csv: cannot open " + filename);
    const int m = lift.dim();
    out << "t";
    for (int j = 1; j <= m; ++j) out << ",x" << j;
    for (int r = 1; r <= m; ++r)
        for (int c = 1; c <= m; ++c) out << ",A" << r << c;
    out << "\n";
    char buf[32];
    for (int k = 0; k < lift.path.n_points(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", lift.grid().time(k));
        out << buf;
        for (int j = 0; j < m; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", lift.path.value(k, j));
            out << "," << buf;
        }
        const double* a = lift.area.at(k);
        for (int e = 0; e < m * m; ++e) {
            std::snprintf(buf, sizeof(buf), "%.17g", a[e]);
            out << "," << buf;
        }
        out << "\n";
    }
}

std::vector<std::array<int, 3>> all_index_triples(int n_points) {
    std::vector<std::array<int, 3>> out;
    for (int s = 0; s < n_points; ++s)
        for (int u = s + 1; u < n_points; ++u)
            for (int t = u + 1; t < n_points; ++t) out.push_back({s, u, t});
    return out;
}

}  // namespace rough
