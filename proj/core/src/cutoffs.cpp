#include "swald/cutoffs.hpp"

#include <cmath>
#include <sstream>

#include "swald/numerics.hpp"

namespace swald {

StaticCutoffs static_cutoffs(const ModelParams& m) {
    StaticCutoffs out{};
    out.p_L = p_of_lr(-m.u_L / m.u_H);
    if (m.u_H > m.dund_H)
        out.p_M = p_of_lr((-m.u_L + m.dund_L) / (m.u_H - m.dund_H));
    if (m.c >= m.b * (-m.u_L))
        throw UndefinedValue("p_tilde undefined: c >= b(-u_L)");
    out.p_tilde = p_of_lr((m.b * (-m.u_L) - m.c) / (m.a * m.dbar_H + m.c));
    return out;
}

double immediate_mix_prob(double p0, const ModelParams& m) {
    const auto st = static_cutoffs(m);
    if (!st.p_M)
        throw UndefinedValue("q undefined: a simultaneous clash cannot net zero");
    if (p0 < st.p_L - 1e-15 || p0 > *st.p_M + 1e-15) {
        std::ostringstream os;
        os << "q domain is [" << st.p_L << ", " << *st.p_M << "], got p0 = " << p0;
        throw OutOfRange(os.str());
    }
    const double L0 = lr_of_p(p0);
    return (L0 * m.u_H + m.u_L) / (L0 * m.dund_H + m.dund_L);
}

double t_r(double p0, double beta, const ModelParams& m,
           const SolverControls& k) {
    const double L0 = lr_of_p(p0);
    auto g = [&](double t) {
        return m.b * (-m.u_L) - m.c -
               lr_at(L0, t, m) *
                   (m.c + m.a * m.dbar_H * (1.0 - beta) * std::exp(-m.a * t));
    };
    const double g0 = g(0.0);
    if (g0 < 0.0) {
        std::ostringstream os;
        os << "no positive randomization window: initial stopping rate is "
              "negative at p0 = "
           << p0 << " (beta = " << beta << ")";
        throw NoRandomization(os.str());
    }
    if (g0 == 0.0) return 0.0;
    return first_crossing(g, 0.0, k.horizon, k.scan_step, k.bisect_tol);
}

double t_l(double p0, double beta, const ModelParams& m,
           const SolverControls& k) {
    const double L0 = lr_of_p(p0);
    auto factor = [&](double t) {
        return m.u_H - (1.0 - beta) * (1.0 - std::exp(-m.a * t)) * m.dbar_H;
    };
    auto g = [&](double t) { return lr_at(L0, t, m) * factor(t) + m.u_L; };
    if (g(0.0) >= 0.0) return 0.0;
    // guard the scan against the R-value factor turning nonpositive first
    for (double t = k.scan_step; t <= k.horizon; t += k.scan_step) {
        if (g(t) >= 0.0)
            return bisect_root(g, t - k.scan_step, t, {k.bisect_tol, 200});
        if (factor(t) <= 0.0)
            throw NotFound(
                "earliest start infeasible: the R value factor turns "
                "nonpositive before the crossing");
    }
    throw NoCrossing("earliest-start equation has no root within the horizon");
}

RandomizationWindow randomization_window(double p0, double beta,
                                         const ModelParams& m,
                                         const SolverControls& k) {
    return {t_l(p0, beta, m, k), t_r(p0, beta, m, k)};
}

double value_kernel(double t, double L0, double scale, double uref,
                    const ModelParams& m) {
    const double eat = std::exp(-m.a * t);
    return (scale * m.dbar_H / 2.0 * eat + m.c / m.a -
            (-uref - m.c / m.b) / lr_at(L0, t, m)) *
           eat;
}

double j2_constant(double T_hat, double p0, const ModelParams& m) {
    return value_kernel(T_hat, lr_of_p(p0), 1.0, m.u_L, m);
}

double p_star_of_T(double T_hat, double p0, const ModelParams& m) {
    const double den =
        m.u_H - m.dbar_H / 2.0 - m.c / m.a + j2_constant(T_hat, p0, m);
    if (den <= 0.0) {
        std::ostringstream os;
        os << "start-value boundary undefined: nonpositive denominator " << den
           << " at T_hat = " << T_hat;
        throw NotFound(os.str());
    }
    return p_of_lr((m.c / m.b) / den);
}

double fixed_point_pstar(const ModelParams& m, const SolverControls& k) {
    const auto st = static_cutoffs(m);
    const double hi = std::min(st.p_L, st.p_tilde) - 1e-9;
    auto g = [&](double p0) {
        return p_star_of_T(t_r(p0, 0.0, m, k), p0, m) - p0;
    };
    return bisect_root(g, 1e-6, hi, {k.bisect_tol, 200});
}

double beta_mixed_learning(double p0, const ModelParams& m,
                           const SolverControls& k) {
    const double L0 = lr_of_p(p0);
    auto g = [&](double beta) {
        const double Tr = t_r(p0, beta, m, k);
        const double H = value_kernel(Tr, L0, 1.0 - beta, m.u_L, m);
        const double den =
            m.u_H - (1.0 - beta) * m.dbar_H / 2.0 - m.c / m.a + H;
        return L0 - (m.c / m.b) / den;
    };
    const double lo = 1e-12, hi = 1.0 - 1e-12;
    const double glo = g(lo), ghi = g(hi);
    if (std::signbit(glo) == std::signbit(ghi)) {
        std::ostringstream os;
        os << "S-atom equation has no sign change: g(0+) = " << glo
           << ", g(1-) = " << ghi << " at p0 = " << p0;
        throw NotFound(os.str());
    }
    return bisect_root(g, lo, hi, {k.bisect_tol, 200});
}

double n_player_cutoff(int Nv, const ModelParams& m) {
    if (Nv < 2) throw OutOfRange("player count must be at least 2");
    if (m.c >= m.b * (-m.u_L))
        throw UndefinedValue("rate boundary undefined: c >= b(-u_L)");
    return p_of_lr((m.b * (-m.u_L) - m.c) / ((Nv - 1) * m.a * m.dbar_H + m.c));
}

double p_tilde_c_limit(const ModelParams& m) {
    return p_of_lr(m.b * (-m.u_L) / (m.a * m.dbar_H));
}

double t_ps(const ModelParams& m) {
    if (m.regime != CompetitionRegime::Intense)
        throw RegimeError(
            "second-mover crossing time requires the intense regime "
            "(u_H - dbar_H < u_S)");
    if (m.u_H <= 0.0) return 0.0;
    return std::log(m.dbar_H / (m.dbar_H - m.u_H)) / m.a;
}

double p_nr(const ModelParams& m, const SolverControls& k) {
    if (m.regime != CompetitionRegime::Intense)
        throw RegimeError("no-learning prior requires the intense regime");
    const double Tps = t_ps(m);
    auto w0 = [&](double p0) {
        const double L0 = lr_of_p(p0);
        const double chi = value_kernel(Tps, L0, 1.0, m.u_S, m);
        return p0 * ((m.u_H - m.dbar_H) - m.c / m.a + m.dbar_H / 2.0) +
               (1.0 - p0) * (-m.c / m.b) + p0 * chi;
    };
    return bisect_root(w0, 1e-6, 0.999, {k.bisect_tol, 200});
}

}  // namespace swald
