#include "swald/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "swald/cutoffs.hpp"
#include "swald/single_dm.hpp"

namespace swald {

const char* to_string(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::ImmediateS: return "ImmediateS";
        case RegimeLabel::MixedLearning: return "MixedLearning";
        case RegimeLabel::RandomStopping: return "RandomStopping";
        case RegimeLabel::ImmediateMix: return "ImmediateMix";
        case RegimeLabel::ImmediateR: return "ImmediateR";
        case RegimeLabel::CompetitionPure: return "CompetitionPure";
    }
    return "?";
}

RegimeLabel regime_from_string(const std::string& s) {
    for (RegimeLabel r :
         {RegimeLabel::ImmediateS, RegimeLabel::MixedLearning,
          RegimeLabel::RandomStopping, RegimeLabel::ImmediateMix,
          RegimeLabel::ImmediateR, RegimeLabel::CompetitionPure})
        if (s == to_string(r)) return r;
    throw OutOfRange("unknown regime label: " + s);
}

namespace {

void require_gentle(const ModelParams& m, const char* what) {
    if (m.regime != CompetitionRegime::Gentle) {
        std::ostringstream os;
        os << what
           << " applies under gentle competition (u_S < u_H - dbar_H); "
              "use the competition extension for the intense regime";
        throw RegimeError(os.str());
    }
}

}  // namespace

Classification classify(double p0, const ModelParams& m,
                        const SolverControls& k) {
    require_gentle(m, "the regime classification");
    if (!(p0 > 0.0) || !(p0 < 1.0))
        throw OutOfRange("prior must lie strictly inside (0, 1)");

    Classification out;
    if (!(m.b < 2.0 * m.a)) {
        std::ostringstream os;
        os << "characterization hypothesis b < 2a unmet (b = " << m.b
           << ", 2a = " << 2.0 * m.a
           << "); conditions evaluated anyway, coverage not guaranteed";
        out.notes.push_back(os.str());
    }

    const auto st = static_cutoffs(m);
    const auto dm = dm_cutoffs(m);
    out.p_und = dm.p_und;
    out.p_L = st.p_L;
    out.p_M = st.p_M;
    out.p_tilde = st.p_tilde;

    bool have_pstar = true;
    try {
        out.p_star = fixed_point_pstar(m, k);
    } catch (const Error& e) {
        have_pstar = false;
        out.p_star = std::numeric_limits<double>::quiet_NaN();
        out.notes.push_back(
            std::string("start-value fixed point unresolved (") + e.what() +
            "); the MixedLearning/RandomStopping split is unavailable");
    }

    if (p0 <= dm.p_und) out.regimes.push_back(RegimeLabel::ImmediateS);
    if (have_pstar) {
        if (dm.p_und < p0 && p0 < out.p_star)
            out.regimes.push_back(RegimeLabel::MixedLearning);
        if (out.p_star <= p0 && p0 < st.p_tilde)
            out.regimes.push_back(RegimeLabel::RandomStopping);
    }
    if (st.p_M && st.p_L < p0 && p0 < *st.p_M)
        out.regimes.push_back(RegimeLabel::ImmediateMix);
    if (st.p_M) {
        if (p0 >= *st.p_M) out.regimes.push_back(RegimeLabel::ImmediateR);
    } else {
        out.notes.push_back(
            "clash-zero cutoff undefined (u_H <= dund_H): the ImmediateMix "
            "and ImmediateR conditions cannot hold");
    }

    if (out.regimes.empty()) {
        std::ostringstream os;
        os << "no regime condition holds at p0 = " << p0
           << "; cutoffs: p_und = " << dm.p_und << ", p_star = " << out.p_star
           << ", p_tilde = " << st.p_tilde << ", p_L = " << st.p_L
           << ", p_M = ";
        if (st.p_M)
            os << *st.p_M;
        else
            os << "undefined";
        out.notes.push_back(os.str());
    }
    return out;
}

EquilibriumProfile build_equilibrium(RegimeLabel regime, double p0,
                                     const ModelParams& m,
                                     const SolverControls& k,
                                     std::optional<double> that) {
    require_gentle(m, "equilibrium construction");
    const auto cls = classify(p0, m, k);
    bool ok = false;
    for (RegimeLabel r : cls.regimes) ok = ok || (r == regime);
    if (!ok) {
        std::ostringstream os;
        os << to_string(regime) << " condition fails at p0 = " << p0;
        for (const auto& n : cls.notes) os << "; " << n;
        throw OutOfRange(os.str());
    }

    EquilibriumProfile out;
    out.regime = regime;
    out.p0 = p0;

    switch (regime) {
        case RegimeLabel::ImmediateS:
            out.strategy.atom_S0 = 1.0;
            return out;
        case RegimeLabel::ImmediateR:
            out.strategy.atom_R0 = 1.0;
            return out;
        case RegimeLabel::ImmediateMix:
            out.q = immediate_mix_prob(p0, m);
            out.strategy.atom_R0 = out.q;
            out.strategy.atom_S0 = 1.0 - out.q;
            return out;
        case RegimeLabel::RandomStopping:
        case RegimeLabel::MixedLearning:
            break;
        case RegimeLabel::CompetitionPure:
            // unreachable: never a Theorem-condition label, so the
            // membership check above has already thrown
            throw OutOfRange("competition profiles are built by the extension");
    }

    const double beta = regime == RegimeLabel::MixedLearning
                            ? beta_mixed_learning(p0, m, k)
                            : 0.0;
    const auto w = randomization_window(p0, beta, m, k);
    const double T_hat = that.value_or(0.5 * (w.T_l + w.T_r));
    if (T_hat < w.T_l - 1e-12 || T_hat > w.T_r + 1e-12) {
        std::ostringstream os;
        os << "start time " << T_hat << " outside the admissible window ["
           << w.T_l << ", " << w.T_r << "] at p0 = " << p0;
        throw OutOfRange(os.str());
    }
    out.beta = beta;
    out.strategy.atom_S0 = beta;
    out.strategy.path = solve_master_ode(p0, T_hat, beta, m, k);
    out.T_hat = T_hat;
    out.T_bar = out.strategy.path->T_bar;
    out.window_lo = w.T_l;
    out.window_hi = w.T_r;
    return out;
}

double w_value(double t, double T_hat, double beta, double p0,
               const ModelParams& m) {
    if (t < 0.0 || t > T_hat + 1e-12)
        throw OutOfRange("the pre-randomization value is defined on [0, T_hat]");
    const double L0 = lr_of_p(p0);
    const double p = p_of_lr(lr_at(L0, t, m));
    const double s = 1.0 - beta;
    return p * ((m.u_H - s * m.dbar_H) - m.c / m.a +
                s * m.dbar_H / 2.0 * std::exp(-m.a * t)) +
           (1.0 - p) * (-m.c / m.b) +
           p * std::exp(m.a * t) * value_kernel(T_hat, L0, s, m.u_L, m);
}

}  // namespace swald
