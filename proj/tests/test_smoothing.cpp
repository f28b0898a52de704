#include <doctest.h>

#include <cmath>
#include <vector>

#include "roughcocycle/analytic_cov.hpp"
#include "roughcocycle/gaussian_driver.hpp"
#include "roughcocycle/smoothing.hpp"
#include "roughcocycle/stats.hpp"

using namespace rough;

namespace {

VectorPath linear_path(const TimeGrid& grid, double a, double b) {
    VectorPath p(grid, 2);
    for (int k = 0; k < p.n_points(); ++k) {
        p.at(k, 0) = a * grid.time(k);
        p.at(k, 1) = b * grid.time(k);
    }
    return p;
}

}  // namespace

TEST_CASE("smoothing parameter snapping") {
    TimeGrid g = make_grid(0.0, 1.0, 64);
    CHECK(make_smoothing_params(0.25, g).delta_cells == 16);
    CHECK_THROWS_AS(make_smoothing_params(0.3, g), std::invalid_argument);
    CHECK_THROWS_AS(make_smoothing_params(-0.25, g), std::invalid_argument);
    CHECK(nearest_smoothing_params(0.3, g).delta_cells == 19);
    CHECK(nearest_smoothing_params(1e-9, g).delta_cells == 1);
}

TEST_CASE("smoothing fixes linear paths") {
    TimeGrid src = make_grid(0.0, 1.25, 80);
    VectorPath lin = linear_path(src, 2.0, -0.5);
    SmoothingParams params = make_smoothing_params(0.25, src);
    IndexWindow window{0, 64};
    VectorPath od = smooth_path(lin, params, window);
    CHECK(od.value(0, 0) == 0.0);
    for (int k = 0; k <= 64; ++k) {
        CHECK(od.value(k, 0) == doctest::Approx(2.0 * od.grid().time(k)).epsilon(1e-13));
        CHECK(od.value(k, 1) == doctest::Approx(-0.5 * od.grid().time(k)).epsilon(1e-13));
    }
    VectorPath x = diff_process(restrict_path(lin, window), od);
    for (int k = 0; k <= 64; ++k) {
        CHECK(std::abs(x.value(k, 0)) <= 1e-13);
        CHECK(std::abs(x.value(k, 1)) <= 1e-13);
    }
}

TEST_CASE("smoothing input validation") {
    TimeGrid src = make_grid(0.0, 1.0, 64);
    VectorPath w = sample_bm(src, 1, {3, 3});
    // window too close to the right end for the given delta
    CHECK_THROWS_AS(smooth_path(w, SmoothingParams{16}, IndexWindow{0, 60}),
                    std::invalid_argument);
    // window without time zero
    CHECK_THROWS_AS(smooth_path(w, SmoothingParams{8}, IndexWindow{4, 40}),
                    std::invalid_argument);
    CHECK_THROWS_AS(smooth_path(w, SmoothingParams{0}, IndexWindow{0, 32}),
                    std::invalid_argument);
}

TEST_CASE("oriented integral anchors at zero on two-sided grids") {
    TimeGrid src = make_grid(-1.0, 1.25, 144);  // mesh 1/64
    VectorPath w = sample_bm(src, 1, {17, 5});
    SmoothingParams params = make_smoothing_params(0.25, src);
    IndexWindow window{0, 128};  // [-1, 1]
    VectorPath od = smooth_path(w, params, window);
    auto zero = od.grid().index_of_zero();
    REQUIRE(zero);
    CHECK(od.value(*zero, 0) == 0.0);
    // the trapezoid prefix relation holds across the whole window, so the
    // values left of zero realize the oriented integral
    const double h = src.mesh;
    const double delta = params.delta(h);
    for (int k : {3, 40, 64, 100}) {
        double g0 = (w.value(window.first + k + params.delta_cells, 0) -
                     w.value(window.first + k, 0)) / delta;
        double g1 = (w.value(window.first + k + 1 + params.delta_cells, 0) -
                     w.value(window.first + k + 1, 0)) / delta;
        CHECK(od.value(k + 1, 0) - od.value(k, 0) ==
              doctest::Approx(0.5 * h * (g0 + g1)).epsilon(1e-12));
    }
}

TEST_CASE("smooth derivative and its exact trapezoid integral") {
    TimeGrid src = make_grid(0.0, 1.25, 80);
    VectorPath lin = linear_path(src, 1.5, 0.0);
    SmoothingParams params = make_smoothing_params(0.25, src);
    CHECK(smooth_derivative(lin, params, 10)(0) == doctest::Approx(1.5).epsilon(1e-13));

    VectorPath w = sample_bm(src, 2, {41, 0});
    IndexWindow window{0, 64};
    VectorPath od = smooth_path(w, params, window);
    // trapezoid-integrating the derivative reproduces the smoothed path
    const double h = src.mesh;
    std::vector<double> acc(2, 0.0);
    for (int k = 0; k < 64; ++k) {
        Eigen::VectorXd g0 = smooth_derivative(w, params, k);
        Eigen::VectorXd g1 = smooth_derivative(w, params, k + 1);
        for (int j = 0; j < 2; ++j) {
            acc[j] += 0.5 * h * (g0(j) + g1(j));
            CHECK(od.value(k + 1, j) == doctest::Approx(acc[j]).epsilon(1e-12));
        }
    }
    // delta = mesh: the derivative is the per-cell slope of the interpolant
    SmoothingParams unit{1};
    Eigen::VectorXd s = smooth_derivative(w, unit, 12);
    CHECK(s(0) == doctest::Approx((w.value(13, 0) - w.value(12, 0)) / h).epsilon(1e-13));
    CHECK_THROWS_AS(smooth_derivative(w, params, 65), std::invalid_argument);
}

TEST_CASE("smooth area closed form for linear paths") {
    TimeGrid src = make_grid(0.0, 1.25, 80);
    VectorPath lin = linear_path(src, 2.0, -1.0);
    SmoothingParams params = make_smoothing_params(0.25, src);
    IndexWindow window{0, 64};
    RoughPathLift lift = smooth_lift(lin, params, window);
    for (auto [s, t] : {std::pair{0, 64}, {10, 30}}) {
        double len = (t - s) * src.mesh;
        Matrix x = area_lookup(lift, s, t);
        CHECK(x(0, 0) == doctest::Approx(0.5 * len * len * 4.0).epsilon(1e-12));
        CHECK(x(0, 1) == doctest::Approx(0.5 * len * len * -2.0).epsilon(1e-12));
        CHECK(x(1, 1) == doctest::Approx(0.5 * len * len).epsilon(1e-12));
    }
}

TEST_CASE("smooth lift is geometric and chen-consistent on brownian input") {
    TimeGrid src = make_grid(0.0, 1.25, 160);
    SmoothingParams params = make_smoothing_params(0.25, src);
    IndexWindow window{0, 128};
    for (uint64_t i = 0; i < 20; ++i) {
        RoughPathLift lift = smooth_lift(sample_bm(src, 2, {500, i}), params, window);
        CHECK(lift.geometric);
        CHECK(symmetry_defect(lift) <= 1e-12);
        CHECK(chen_defect(lift, all_index_triples(10)) <= 1e-12);
    }
}

TEST_CASE("periodic slopes make the smoothed path linear (degenerate case)") {
    // cell slopes repeat with period delta_cells, hence the difference
    // quotient is constant and the smoothed path coincides with its own
    // piecewise-linear interpolant
    TimeGrid src = make_grid(0.0, 1.0, 64);
    VectorPath zig(src, 1);
    const double slopes[2] = {1.0, -0.4};
    for (int k = 0; k < 64; ++k)
        zig.at(k + 1, 0) = zig.value(k, 0) + slopes[k % 2] * src.mesh;
    SmoothingParams params{2};
    IndexWindow window{0, 48};
    RoughPathLift exact = smooth_lift(zig, params, window);
    RoughPathLift resampled = lift_smooth(smooth_path(zig, params, window));
    CHECK(rough_metric(exact, resampled, 0.4) <= 1e-10);
}

TEST_CASE("smoothing commutes with the wiener shift") {
    const int tau = 16;
    TimeGrid src = make_grid(0.0, 1.5, 96);  // mesh 1/64, room for shift+delta
    SmoothingParams params = make_smoothing_params(0.25, src);
    const int t_cells = 64;
    for (uint64_t i = 0; i < 10; ++i) {
        VectorPath omega = sample_bm(src, 2, {600, i});
        RoughPathLift shifted_smooth =
            shift_lift(smooth_lift(omega, params, IndexWindow{0, t_cells + tau}), tau);
        RoughPathLift smooth_shifted =
            smooth_lift(wiener_shift(omega, tau), params, IndexWindow{0, t_cells});
        CHECK(rough_metric(shifted_smooth, smooth_shifted, 0.4) <= 1e-10);
    }
}

TEST_CASE("x_delta variance matches the closed form (Monte Carlo)") {
    const int n_samples = 20000;
    const double delta = 0.25;
    TimeGrid src = make_grid(0.0, 1.25, 80);  // mesh 1/64
    SmoothingParams params = make_smoothing_params(delta, src);
    IndexWindow window{0, 64};
    const int probes[4] = {4, 12, 24, 56};
    std::vector<std::vector<double>> vals(4, std::vector<double>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        VectorPath omega = sample_bm(src, 1, {888, static_cast<uint64_t>(i)});
        VectorPath od = smooth_path(omega, params, window);
        for (int p = 0; p < 4; ++p)
            vals[p][i] = od.value(probes[p], 0) - omega.value(probes[p], 0);
    }
    const double h = src.mesh;
    double worst = 0.0;
    for (int p = 0; p < 4; ++p) {
        MeanSe v = variance_se(vals[p]);
        CHECK(std::abs(v.mean - sigma2_x_delta(probes[p] * h, delta)) <= 3.0 * v.se + 2.0 * h);
        worst = std::max(worst, v.mean - 3.0 * v.se - 2.0 * h);
    }
    // uniform variance bound 2 delta/3
    CHECK(worst <= 2.0 * delta / 3.0);
}

TEST_CASE("smoothed increments are stationary (Monte Carlo)") {
    const int n_samples = 20000;
    TimeGrid src = make_grid(0.0, 1.25, 80);
    SmoothingParams params = make_smoothing_params(0.25, src);
    IndexWindow window{0, 64};
    const int gap = 16;
    const int anchors[3] = {0, 16, 40};
    std::vector<std::vector<double>> inc(3, std::vector<double>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        VectorPath od = smooth_path(sample_bm(src, 1, {999, static_cast<uint64_t>(i)}),
                                    params, window);
        for (int a = 0; a < 3; ++a)
            inc[a][i] = od.value(anchors[a] + gap, 0) - od.value(anchors[a], 0);
    }
    MeanSe v0 = variance_se(inc[0]);
    for (int a = 1; a < 3; ++a) {
        MeanSe va = variance_se(inc[a]);
        CHECK(std::abs(va.mean - v0.mean) <= 3.0 * std::hypot(v0.se, va.se));
    }
}
