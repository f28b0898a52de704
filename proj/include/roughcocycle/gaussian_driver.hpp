#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

#include "roughcocycle/grid_path.hpp"
#include "roughcocycle/rough_core.hpp"

namespace rough {

// Substream addressing: (master_seed, stream_index) maps to an engine seed
// through a fixed published integer mix (see substream_seed). Distinct
// stream indices give statistically independent streams.
struct RngStream {
    uint64_t master_seed = 0;
    uint64_t stream_index = 0;
};

// SplitMix64-style finalizer applied to master_seed + GAMMA*(stream_index+1)
// with GAMMA = 0x9E3779B97F4A7C15. Frozen by test vectors; substream_seed(0,0)
// equals the first output of the reference SplitMix64 sequence at seed 0.
uint64_t substream_seed(RngStream stream);

// Deterministic portable Gaussian source: mt19937_64 uniforms mapped through
// Box-Muller. Identical (master_seed, stream_index) give bit-identical draws
// on any platform.
class GaussianRng {
public:
    explicit GaussianRng(RngStream stream);
    double normal();
    double uniform();  // in (0,1]

private:
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// Brownian path on a grid containing 0, anchored at w(0)=0, components
// independent. The negative side, when present, is an independent increment
// walk taken backward from 0.
VectorPath sample_bm(const TimeGrid& grid, int dim, RngStream stream);

struct HurstModel {
    double hurst = 0.5;
    int dim = 1;
};

// Exact-in-distribution fractional Brownian motion via a dense Cholesky
// factor of the grid increment covariance. The factor depends only on
// (grid, hurst) and is reused across draws.
class FbmSampler {
public:
    FbmSampler(const TimeGrid& grid, HurstModel model);
    VectorPath sample(RngStream stream) const;
    const TimeGrid& grid() const { return grid_; }

private:
    TimeGrid grid_;
    HurstModel model_;
    int zero_index_ = 0;
    Eigen::MatrixXd chol_;  // lower factor of the increment covariance
};

VectorPath sample_fbm(const TimeGrid& grid, HurstModel model, RngStream stream);

// Reference Brownian lift: geometric lift of the piecewise-linear
// interpolant at sample resolution. Approximates the L2-limit area with an
// error vanishing as the mesh goes to 0; comparisons against smoothed
// drivers are meaningful for delta well above the mesh.
RoughPathLift bm_reference_lift(const VectorPath& path);

}  // namespace rough
