#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace swald {

// Pairwise (cascade) summation: rounding error grows with log n, not n.
double pairwise_sum(std::span<const double> xs);

struct BisectOptions {
    double tol = 1e-10;  // absolute width tolerance on the bracket
    int max_iter = 200;
};

// Root of f on [lo, hi]; requires a sign change across the bracket.
// Throws NotFound (with both endpoint values) otherwise.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   BisectOptions opt = {});

// Smallest root of f past t0: forward scan at `step` for the first sign
// change relative to f(t0), then bisection to `tol`.  f(t0) == 0 returns t0.
// Throws NoCrossing when the scan exhausts [t0, horizon].
double first_crossing(const std::function<double(double)>& f, double t0,
                      double horizon, double step, double tol = 1e-10);

// Centered finite difference of f at x.
double fd_derivative(const std::function<double(double)>& f, double x,
                     double h = 1e-6);

// One classical fourth-order explicit step for y' = f(t, y), y in R^K.
template <std::size_t K, class F>
std::array<double, K> rk4_step(F&& f, double t, const std::array<double, K>& y,
                               double h) {
    auto axpy = [](const std::array<double, K>& u, double s,
                   const std::array<double, K>& v) {
        std::array<double, K> r;
        for (std::size_t i = 0; i < K; ++i) r[i] = u[i] + s * v[i];
        return r;
    };
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    std::array<double, K> out;
    for (std::size_t i = 0; i < K; ++i)
        out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

// Cumulative trapezoid of samples (t_i, y_i); out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> t,
                                         std::span<const double> y);

}  // namespace swald
