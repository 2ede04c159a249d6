#include "swald/numerics.hpp"

#include <cmath>
#include <sstream>

#include "swald/errors.hpp"

namespace swald {

namespace {

double pairwise_sum_impl(const double* xs, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum_impl(xs.data(), xs.size());
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   BisectOptions opt) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        std::ostringstream os;
        os << "no sign change on [" << lo << ", " << hi << "]: f(lo) = " << flo
           << ", f(hi) = " << fhi;
        throw NotFound(os.str());
    }
    for (int it = 0; it < opt.max_iter && hi - lo > opt.tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double first_crossing(const std::function<double(double)>& f, double t0,
                      double horizon, double step, double tol) {
    const double f0 = f(t0);
    if (f0 == 0.0) return t0;
    double prev = t0;
    for (double t = t0 + step; t <= horizon + step * 0.5; t += step) {
        const double ft = f(t);
        if (ft == 0.0) return t;
        if (std::signbit(ft) != std::signbit(f0))
            return bisect_root(f, prev, t, {tol, 200});
        prev = t;
    }
    std::ostringstream os;
    os << "no sign change of the crossing function on [" << t0 << ", " << horizon
       << "] at scan step " << step;
    throw NoCrossing(os.str());
}

double fd_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

std::vector<double> cumulative_trapezoid(std::span<const double> t,
                                         std::span<const double> y) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    return out;
}

}  // namespace swald
