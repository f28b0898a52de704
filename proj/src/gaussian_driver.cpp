#include "roughcocycle/gaussian_driver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rough {

uint64_t substream_seed(RngStream stream) {
    uint64_t z = stream.master_seed + 0x9E3779B97F4A7C15ULL * (stream.stream_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

GaussianRng::GaussianRng(RngStream stream) : engine_(substream_seed(stream)) {}

double GaussianRng::uniform() {
    // 53-bit mantissa, shifted into (0,1] so log() below is always finite.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

VectorPath sample_bm(const TimeGrid& grid, int dim, RngStream stream) {
    auto zero = grid.index_of_zero();
    if (!zero) throw std::invalid_argument("sample_bm: 0 is not a grid point");
    if (dim < 1) throw std::invalid_argument("sample_bm: dim must be positive");
    GaussianRng rng(stream);
    VectorPath path(grid, dim);
    const double s = std::sqrt(grid.mesh);
    const int k0 = *zero;
    for (int k = k0; k < grid.n_cells; ++k)
        for (int j = 0; j < dim; ++j) path.at(k + 1, j) = path.value(k, j) + s * rng.normal();
    for (int k = k0; k > 0; --k)
        for (int j = 0; j < dim; ++j) path.at(k - 1, j) = path.value(k, j) + s * rng.normal();
    return path;
}

namespace {

double fbm_cov(double s, double t, double two_h) {
    return 0.5 * (std::pow(std::abs(t), two_h) + std::pow(std::abs(s), two_h) -
                  std::pow(std::abs(t - s), two_h));
}

}  // namespace

FbmSampler::FbmSampler(const TimeGrid& grid, HurstModel model) : grid_(grid), model_(model) {
    if (!(model.hurst > 0.0 && model.hurst < 1.0))
        throw std::invalid_argument("FbmSampler: Hurst parameter must lie in (0,1)");
    if (model.dim < 1) throw std::invalid_argument("FbmSampler: dim must be positive");
    if (grid.n_cells > 4096)
        throw std::invalid_argument("FbmSampler: dense factorization limited to 4096 cells");
    auto zero = grid.index_of_zero();
    if (!zero) throw std::invalid_argument("FbmSampler: 0 is not a grid point");
    zero_index_ = *zero;

    const int n = grid.n_cells;
    const double two_h = 2.0 * model.hurst;
    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i) {
        double si = grid.time(i), ti = grid.time(i + 1);
        for (int j = 0; j <= i; ++j) {
            double sj = grid.time(j), tj = grid.time(j + 1);
            double v = fbm_cov(ti, tj, two_h) - fbm_cov(ti, sj, two_h) - fbm_cov(si, tj, two_h) +
                       fbm_cov(si, sj, two_h);
            cov(i, j) = v;
            cov(j, i) = v;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("FbmSampler: increment covariance not numerically positive "
                                 "definite (H=" + std::to_string(model.hurst) +
                                 ", n=" + std::to_string(n) + ")");
    chol_ = llt.matrixL();
}

VectorPath FbmSampler::sample(RngStream stream) const {
    GaussianRng rng(stream);
    const int n = grid_.n_cells;
    const int m = model_.dim;
    VectorPath path(grid_, m);
    Eigen::VectorXd z(n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) z(i) = rng.normal();
        Eigen::VectorXd inc = chol_ * z;
        // prefix-sum the increments, then anchor the path at w(0)=0
        double acc = 0.0;
        path.at(0, j) = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += inc(k);
            path.at(k + 1, j) = acc;
        }
        double base = path.value(zero_index_, j);
        for (int k = 0; k <= n; ++k) path.at(k, j) -= base;
    }
    return path;
}

VectorPath sample_fbm(const TimeGrid& grid, HurstModel model, RngStream stream) {
    return FbmSampler(grid, model).sample(stream);
}

RoughPathLift bm_reference_lift(const VectorPath& path) {
    return lift_smooth(path);
}

}  // namespace rough
