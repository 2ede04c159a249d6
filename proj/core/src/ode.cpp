#include "swald/ode.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "swald/numerics.hpp"

namespace swald {

namespace {

// state y = (rho, F_L)
struct Rate {
    const ModelParams& m;
    double L0;
    double beta;
    int Nv;

    std::array<double, 2> operator()(double t,
                                     const std::array<double, 2>& y) const {
        const double rho = y[0], F_L = y[1];
        const double Lt = lr_at(L0, t, m);
        const double ebt = std::exp(-m.b * t);
        double num, den;
        if (Nv == 2) {
            const double eat = std::exp(-m.a * t);
            den = Lt * m.dbar_H * eat + m.dbar_L * ebt;
            num = m.b * (-m.u_L) - m.c - m.c * Lt + m.b * m.dbar_L * F_L -
                  Lt * m.dbar_H * m.a * eat * (1.0 - beta - rho);
        } else {
            const int n1 = Nv - 1;
            const double eat = std::exp(-m.a * n1 * t);
            const double sr = std::pow(1.0 - rho, n1 - 1);
            const double sf = std::pow(1.0 - F_L, n1 - 1);
            den = n1 * (Lt * m.dbar_H * eat * sr + m.dbar_L * sf * ebt);
            num = m.b * (-m.u_L) - m.c - m.c * Lt +
                  m.b * m.dbar_L * (1.0 - sf * (1.0 - F_L)) -
                  Lt * m.dbar_H * n1 * m.a * eat * sr * (1.0 - rho);
        }
        const double rp = num / den;
        return {rp, ebt * rp};
    }
};

// three-point first derivative on a possibly nonuniform grid
double fd3(double fl, double f0, double fr, double hl, double hr) {
    return (fr * hl * hl - fl * hr * hr + f0 * (hr * hr - hl * hl)) /
           (hl * hr * (hl + hr));
}

void check_start_args(double p0, double beta, int Nv) {
    if (!(p0 > 0.0) || !(p0 < 1.0))
        throw OutOfRange("prior must lie strictly inside (0, 1)");
    if (Nv < 2) throw OutOfRange("player count must be at least 2");
    if (beta < 0.0 || beta >= 1.0)
        throw OutOfRange("time-zero S-atom must lie in [0, 1)");
    if (beta > 0.0 && Nv != 2)
        throw OutOfRange("the S-atom profile is a two-player construction");
}

}  // namespace

double initial_slope(double p0, double beta, int Nv, double T_hat,
                     const ModelParams& m) {
    check_start_args(p0, beta, Nv);
    const Rate f{m, lr_of_p(p0), beta, Nv};
    return f(T_hat, {0.0, 0.0})[0];
}

StrategyPath solve_master_ode(double p0, double T_hat, double beta,
                              const ModelParams& m, const SolverControls& k,
                              int Nv) {
    check_start_args(p0, beta, Nv);
    if (T_hat < 0.0) throw OutOfRange("start time must be nonnegative");

    const Rate f{m, lr_of_p(p0), beta, Nv};
    const double cap = 1.0 - beta;
    const double h = k.ode_step;

    StrategyPath out;
    out.T_hat = T_hat;
    out.beta = beta;
    out.Nv = Nv;
    out.p0 = p0;

    const auto push = [&](double t, double rho, double F_L) {
        out.t.push_back(t);
        out.rho.push_back(rho);
        out.F_L.push_back(F_L);
        out.F_H.push_back((1.0 - beta) * (1.0 - std::exp(-m.a * t)) +
                          std::exp(-m.a * t) * rho);
    };

    out.t.reserve(static_cast<std::size_t>(T_hat / h) + 64);
    for (double t = 0.0; t < T_hat - h / 2; t += h) push(t, 0.0, 0.0);
    push(T_hat, 0.0, 0.0);

    if (f(T_hat, {0.0, 0.0})[0] <= 0.0) {
        std::ostringstream os;
        os << "randomized stopping cannot start at T_hat = " << T_hat
           << " (initial rate " << f(T_hat, {0.0, 0.0})[0] << " at p0 = " << p0
           << ")";
        throw NoRandomization(os.str());
    }

    double t = T_hat;
    std::array<double, 2> y{0.0, 0.0};
    while (t <= k.horizon) {
        if (f(t, y)[0] <= 0.0 && y[0] < cap) throw MonotonicityBreak(t);
        const auto trial = rk4_step<2>(f, t, y, h);
        if (trial[0] >= cap) {
            // saturation inside this step: refine the hitting time
            const double tau = bisect_root(
                [&](double s) { return rk4_step<2>(f, t, y, s)[0] - cap; },
                1e-14, h, {k.bisect_tol, 200});
            const auto yf = rk4_step<2>(f, t, y, tau);
            out.T_bar = t + tau;
            push(out.T_bar, cap, yf[1]);
            return out;
        }
        y = trial;
        t += h;
        push(t, y[0], y[1]);
    }
    throw NoCrossing("stop measure failed to saturate within the horizon");
}

double indifference_residual(const StrategyPath& path, const ModelParams& m) {
    const double L0 = lr_of_p(path.p0);
    const int n1 = path.Nv - 1;
    const auto agg = [&](double F) { return 1.0 - std::pow(1.0 - F, n1); };

    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < path.t.size(); ++i) {
        if (path.t[i] <= path.T_hat || path.t[i] >= path.T_bar) continue;
        const double hl = path.t[i] - path.t[i - 1];
        const double hr = path.t[i + 1] - path.t[i];
        const double FHp = fd3(agg(path.F_H[i - 1]), agg(path.F_H[i]),
                               agg(path.F_H[i + 1]), hl, hr);
        const double FLp = fd3(agg(path.F_L[i - 1]), agg(path.F_L[i]),
                               agg(path.F_L[i + 1]), hl, hr);
        const double p = p_of_lr(lr_at(L0, path.t[i], m));
        const double lhs =
            m.c + p * FHp * m.dbar_H + (1.0 - p) * FLp * m.dbar_L;
        const double rhs =
            (1.0 - p) * m.b * (-m.u_L + agg(path.F_L[i]) * m.dbar_L);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double z_form_residual(const StrategyPath& path, const ModelParams& m) {
    if (path.Nv != 2)
        throw OutOfRange("the second-order form is a two-player identity");
    const double L0 = lr_of_p(path.p0);

    // sub-grid from the first index at or past T_hat
    std::size_t i0 = 0;
    while (i0 < path.t.size() && path.t[i0] < path.T_hat) ++i0;
    const std::size_t n = path.t.size() - i0;
    if (n < 3) return 0.0;

    std::vector<double> ts(n), A(n);
    for (std::size_t j = 0; j < n; ++j) {
        ts[j] = path.t[i0 + j];
        A[j] = std::exp(-m.b * ts[j]) * path.rho[i0 + j];
    }
    const std::vector<double> z = cumulative_trapezoid(ts, A);

    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double hl = ts[j] - ts[j - 1];
        const double hr = ts[j + 1] - ts[j];
        const double zpp = fd3(A[j - 1], A[j], A[j + 1], hl, hr);
        const double e2 = std::exp(2.0 * (m.b - m.a) * ts[j]);
        const double D = L0 * m.dbar_H * e2 + m.dbar_L;
        const double g1 =
            m.b - (m.b * m.dbar_L + L0 * m.dbar_H * m.a * e2) / D;
        const double g2 = -m.b * m.b * m.dbar_L / D;
        const double g3 =
            (m.b * (-m.u_L) - m.c - m.c * lr_at(L0, ts[j], m) -
             L0 * m.dbar_H * m.a * (1.0 - path.beta) *
                 std::exp((m.b - 2.0 * m.a) * ts[j])) /
            D;
        worst = std::max(worst, std::abs(zpp + g1 * A[j] + g2 * z[j] - g3));
    }
    return worst;
}

}  // namespace swald
