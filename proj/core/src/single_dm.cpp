#include "swald/single_dm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "swald/numerics.hpp"

namespace swald {

namespace {

double exponent_q(const ModelParams& m) { return m.b / (m.b - m.a); }

// Learning-region value in odds space:
// v(L) = [L (u_H - c/a) + u_S - c/b + K L^q] / (1 + L).
double v_odds(double L, double K, const ModelParams& m) {
    const double q = exponent_q(m);
    return (L * (m.u_H - m.c / m.a) + m.u_S - m.c / m.b + K * std::pow(L, q)) /
           (1.0 + L);
}

double v_odds_slope(double L, double K, const ModelParams& m) {
    const double q = exponent_q(m);
    const double num = L * (m.u_H - m.c / m.a) + m.u_S - m.c / m.b + K * std::pow(L, q);
    const double dnum = (m.u_H - m.c / m.a) + q * K * std::pow(L, q - 1.0);
    return (dnum * (1.0 + L) - num) / ((1.0 + L) * (1.0 + L));
}

double ur_odds(double L, const ModelParams& m) {
    return (L * m.u_H + m.u_L) / (1.0 + L);
}

}  // namespace

DmSolution dm_cutoffs(const ModelParams& m) {
    const double c_bar =
        m.b * (m.u_S - m.u_L) * (m.u_H - m.u_S) / (m.u_H - m.u_L);
    if (m.c >= c_bar) throw NoLearningRegion(c_bar);

    const double cb = m.c / m.b;
    const double L_bar = (m.u_S - m.u_L - cb) / cb;
    const double q = exponent_q(m);
    const double K = cb * (m.b / m.a - 1.0) * std::pow(L_bar, 1.0 - q);

    // lower boundary: (u_H - u_S - c/a) L + K L^q = c/b on (0, L_bar)
    auto g = [&](double L) {
        return (m.u_H - m.u_S - m.c / m.a) * L + K * std::pow(L, q) - cb;
    };
    const double L_und = bisect_root(g, 1e-12, L_bar, {1e-12, 400});

    return {p_of_lr(L_bar), p_of_lr(L_und), K, c_bar, L_bar, L_und};
}

double dm_value(double p, const DmSolution& s, const ModelParams& m) {
    if (p <= s.p_und) return m.u_S;
    if (p >= s.p_bar) return p * m.u_H + (1.0 - p) * m.u_L;
    return v_odds(lr_of_p(p), s.K, m);
}

DmPolicy dm_policy(double p, const DmSolution& s) {
    if (p <= s.p_und) return DmPolicy::TakeS;
    if (p >= s.p_bar) return DmPolicy::TakeR;
    return DmPolicy::Learn;
}

double dm_hjb_operator(double p, double v, double vp, const ModelParams& m) {
    return -m.c + p * m.a * (m.u_H - v) + (1.0 - p) * m.b * (m.u_S - v) +
           (m.b - m.a) * p * (1.0 - p) * vp;
}

PastingResiduals smooth_pasting_residuals(const DmSolution& s,
                                          const ModelParams& m) {
    PastingResiduals r{};
    r.value_upper = std::abs(v_odds(s.L_bar, s.K, m) - ur_odds(s.L_bar, m));
    const double ur_slope = (m.u_H - m.u_L) / ((1.0 + s.L_bar) * (1.0 + s.L_bar));
    r.slope_upper = std::abs(v_odds_slope(s.L_bar, s.K, m) - ur_slope);
    r.value_lower = std::abs(v_odds(s.L_und, s.K, m) - m.u_S);

    // convexity of V on the learning region by second differences
    const int n = 401;
    const double h = (s.p_bar - s.p_und) / (n - 1);
    double conv = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double p = s.p_und + i * h;
        const double d2 = dm_value(p - h, s, m) - 2.0 * dm_value(p, s, m) +
                          dm_value(p + h, s, m);
        conv = std::min(conv, d2 / (h * h));
    }
    r.convexity_min = conv;

    // stopped regions: the operator on the acted value must stay nonpositive
    double sup = -1e300;
    for (int i = 1; i <= 100; ++i) {
        const double p = s.p_und * i / 101.0;
        sup = std::max(sup, dm_hjb_operator(p, m.u_S, 0.0, m));
    }
    for (int i = 1; i <= 100; ++i) {
        const double p = s.p_bar + (1.0 - s.p_bar) * i / 101.0;
        const double u = p * m.u_H + (1.0 - p) * m.u_L;
        sup = std::max(sup, dm_hjb_operator(p, u, m.u_H - m.u_L, m));
    }
    r.supersolution_max = sup;

    // kink at p_und: every slope between the two one-sided derivatives must
    // keep the operator nonpositive (supersolution direction)
    const double dLdp = 1.0 / ((1.0 - s.p_und) * (1.0 - s.p_und));
    const double slope_hi = v_odds_slope(s.L_und, s.K, m) * dLdp;
    double sub = -1e300;
    for (int i = 0; i < 100; ++i) {
        const double sl = slope_hi * i / 99.0;  // from U_S' = 0 up to V'(p_und+)
        sub = std::max(sub, dm_hjb_operator(s.p_und, m.u_S, sl, m));
    }
    r.subdifferential_max = sub;
    return r;
}

}  // namespace swald
