#include "swald/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "block_sum.hpp"
#include "swald/cutoffs.hpp"
#include "swald/errors.hpp"
#include "swald/numerics.hpp"
#include "swald/single_dm.hpp"

namespace swald {

namespace {

using detail::BlockSum;

void require_intense(const ModelParams& m) {
    if (m.regime != CompetitionRegime::Intense)
        throw RegimeError(
            "the pure-competition profile needs the intense regime "
            "(u_H - dbar_H < u_S)");
}

void require_prior(double p0) {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw OutOfRange("prior must lie in (0, 1)");
}

void require_equal_penalties(const ModelParams& m) {
    if (m.dbar_H != m.dbar_L)
        throw RegimeError(
            "the mimic-and-randomize hazard needs equal first-mover "
            "penalties across states (dbar_H == dbar_L)");
}

// closed on the left: the hazard and boundary are well defined at p_L
// itself, and the canonical probe sits exactly there
void require_mrss_window(double p0, const StaticCutoffs& sc) {
    if (!(p0 >= sc.p_L && p0 < sc.p_tilde)) {
        std::ostringstream os;
        os << "prior " << p0 << " outside the mimic-and-randomize window ["
           << sc.p_L << ", " << sc.p_tilde << ")";
        throw OutOfRange(os.str());
    }
}

// h with L_t the observable (doubled-drift) odds; negative past the
// positivity boundary.
double hazard_raw(double t, double L0, const ModelParams& m) {
    const double Lt = lr_at(L0, 2.0 * t, m);
    const double pt = p_of_lr(Lt);
    const double num =
        m.b * (-m.u_L) - m.c -
        Lt * (m.a * (pt * (m.dbar_H - m.dbar_L) + m.dbar_L) + m.c);
    return num / (Lt * m.dbar_H + m.dbar_L);
}

}  // namespace

double competition_value(double t, double p0, const ModelParams& m) {
    require_intense(m);
    require_prior(p0);
    if (!(t >= 0.0)) throw OutOfRange("time must be nonnegative");
    const double T_ps = t_ps(m);
    if (t > T_ps) return 0.0;  // stopped: the safe payoff is the baseline
    const double psi = value_kernel(T_ps, lr_of_p(p0), 1.0, m.u_S, m);
    const double pt = belief_at(p0, t, m);
    return pt * ((m.u_H - m.dbar_H) - m.c / m.a +
                 m.dbar_H / 2.0 * std::exp(-m.a * t)) +
           (1.0 - pt) * (-m.c / m.b) + pt * std::exp(m.a * t) * psi;
}

CompetitionSolution competition_solution(double p0, const ModelParams& m,
                                         const SolverControls& k) {
    require_intense(m);
    require_prior(p0);
    CompetitionSolution sol;
    sol.T_ps = t_ps(m);
    sol.p_nr = p_nr(m, k);
    const double L0 = lr_of_p(p0);
    for (double x = 0.0; x < sol.T_ps; x += k.scan_step) sol.t.push_back(x);
    sol.t.push_back(sol.T_ps);
    sol.W_L.reserve(sol.t.size());
    sol.psi.reserve(sol.t.size());
    for (double tt : sol.t) {
        sol.psi.push_back(value_kernel(tt, L0, 1.0, m.u_S, m));
        sol.W_L.push_back(competition_value(tt, p0, m));
    }
    return sol;
}

EquilibriumProfile competition_equilibrium(double p0, const ModelParams& m,
                                           const SolverControls& k) {
    require_intense(m);
    require_prior(p0);
    const double lo = p_nr(m, k);
    const double hi = static_cutoffs(m).p_tilde;
    if (!(p0 > lo && p0 < hi)) {
        std::ostringstream os;
        os << "prior " << p0 << " outside the pure-competition window ("
           << lo << ", " << hi << ")";
        throw OutOfRange(os.str());
    }
    EquilibriumProfile prof;
    prof.regime = RegimeLabel::CompetitionPure;
    prof.p0 = p0;
    prof.strategy.s_stop = t_ps(m);
    prof.T_hat = prof.T_bar = *prof.strategy.s_stop;
    prof.window_lo = prof.window_hi = *prof.strategy.s_stop;
    return prof;
}

double observable_belief(double p0, double t, const ModelParams& m) {
    return p_of_lr(lr_at(lr_of_p(p0), 2.0 * t, m));
}

double mrss_hazard(double t, double p0, const ModelParams& m) {
    require_equal_penalties(m);
    require_prior(p0);
    require_mrss_window(p0, static_cutoffs(m));
    if (!(t >= 0.0)) throw OutOfRange("time must be nonnegative");
    return hazard_raw(t, lr_of_p(p0), m);
}

MrssSpec mrss_spec(double p0, const ModelParams& m, const SolverControls& k) {
    require_equal_penalties(m);
    require_prior(p0);
    const auto sc = static_cutoffs(m);
    MrssSpec sp;
    const double L0 = lr_of_p(p0);
    const double L_edge = (m.b * (-m.u_L) - m.c) / (m.a * m.dbar_H + m.c);
    sp.boundary_t = std::log(L_edge / L0) / (2.0 * (m.b - m.a));
    sp.feasible = p0 >= sc.p_L && p0 < sc.p_tilde;
    if (!sp.feasible) return sp;
    for (double x = 0.0; x < sp.boundary_t; x += k.scan_step)
        sp.t.push_back(x);
    sp.t.push_back(sp.boundary_t);
    sp.hazard.reserve(sp.t.size());
    sp.belief.reserve(sp.t.size());
    for (double tt : sp.t) {
        sp.hazard.push_back(hazard_raw(tt, L0, m));
        sp.belief.push_back(observable_belief(p0, tt, m));
    }
    return sp;
}

namespace {

// The remaining player's solitary play after observing an R at t1: prizes
// carry the first-mover penalty.  Payoff excludes the -c*t1 already sunk.
struct Continuation {
    double payoff = 0.0;
    double stop = 0.0;
    bool takes_R = false;
};

Continuation continue_after_R(double t1, double pR, bool wH, RngStream& rng,
                              const ModelParams& m) {
    const double uH2 = m.u_H - m.dbar_H;
    const double uL2 = m.u_L - m.dbar_L;
    const double prize = wH ? uH2 : uL2;
    // the safe action dominates any penalized R: stop at once
    if (uH2 <= m.u_S) return {m.u_S, t1, false};
    ModelParams m2 = m;  // penalized solitary problem; not revalidated
    m2.u_H = uH2;
    m2.u_L = uL2;
    DmPolicy pol;
    double L_exit = 0.0;
    try {
        const DmSolution s = dm_cutoffs(m2);
        pol = dm_policy(pR, s);
        L_exit = s.L_bar;
    } catch (const NoLearningRegion&) {
        const double imm = pR * uH2 + (1.0 - pR) * uL2;
        pol = imm > m.u_S ? DmPolicy::TakeR : DmPolicy::TakeS;
    }
    if (pol == DmPolicy::TakeR) return {prize, t1, true};
    if (pol == DmPolicy::TakeS) return {m.u_S, t1, false};
    // learn: absent signals the odds climb to the upper exit, where R
    // becomes worth the penalty
    const double rel_exit = std::log(L_exit / lr_of_p(pR)) / (m.b - m.a);
    const double rate = wH ? m.a : m.b;
    const double rel_sig = -std::log1p(-rng.next_unit()) / rate;
    if (rel_sig < rel_exit) {
        if (wH) return {-m.c * rel_sig + uH2, t1 + rel_sig, true};
        return {-m.c * rel_sig + m.u_S, t1 + rel_sig, false};
    }
    return {-m.c * rel_exit + prize, t1 + rel_exit, true};
}

}  // namespace

SimulationReport mrss_simulate(double p0, std::uint64_t reps,
                               std::uint64_t seed, const ModelParams& m,
                               const SolverControls& k) {
    if (reps < 1) throw InvalidParams("reps must be at least 1");
    require_equal_penalties(m);
    require_prior(p0);
    require_mrss_window(p0, static_cutoffs(m));

    const MrssSpec spec = mrss_spec(p0, m, k);
    const auto Lam = cumulative_trapezoid(spec.t, spec.hazard);
    const double Lam_max = Lam.back();
    const double L0 = lr_of_p(p0);

    // inverse cumulative hazard; draws past the boundary never stop
    // strategically and wait for their own signal instead
    const auto strat_time = [&](double u) {
        const double E = -std::log1p(-u);
        if (E >= Lam_max) return std::numeric_limits<double>::infinity();
        const auto it = std::upper_bound(Lam.begin(), Lam.end(), E);
        const std::size_t j = static_cast<std::size_t>(it - Lam.begin());
        // Lam.front() = 0 <= E keeps j >= 1; E < Lam_max keeps j in range
        const double dL = Lam[j] - Lam[j - 1];
        return spec.t[j - 1] +
               (dL > 0.0
                    ? (E - Lam[j - 1]) / dL * (spec.t[j] - spec.t[j - 1])
                    : 0.0);
    };

    SimulationReport rep;
    rep.reps = reps;
    rep.seed = seed;
    const double hor =
        std::log((std::abs(m.u_H) + std::abs(m.u_L) + 1.0) * 1e12) / m.a;
    for (double x = 0.0; x < hor; x += 0.5) rep.grid.push_back(x);
    rep.grid.push_back(hor);
    const std::size_t G = rep.grid.size();
    std::vector<double> dFH(G + 1, 0.0), dFL(G + 1, 0.0), dGL(G + 1, 0.0);

    BlockSum pay_sum[2], pay_sq[2], stop_sum[2];
    std::uint64_t nH = 0, firstm = 0, inter = 0;
    std::uint64_t ownR_H = 0, ownR_L = 0, winH = 0, winL = 0;

    for (std::uint64_t r = 0; r < reps; ++r) {
        auto ws = RngStream::make(seed, r, 2);
        const bool wH = ws.next_unit() < p0;
        nH += wH;
        RngStream st[2] = {RngStream::make(seed, r, 0),
                           RngStream::make(seed, r, 1)};
        const double rate = wH ? m.a : m.b;
        double te[2];
        bool actR[2];
        for (int i = 0; i < 2; ++i) {
            const double tsig = -std::log1p(-st[i].next_unit()) / rate;
            const double tau = strat_time(st[i].next_unit());
            te[i] = std::min(tsig, tau);
            // in state H both the signal and the strategic stop take R;
            // in state L the signal is a breakdown and stops with S
            actR[i] = wH || tau < tsig;
        }

        int first;
        if (te[0] < te[1]) {
            first = 0;
        } else if (te[1] < te[0]) {
            first = 1;
        } else {
            ++inter;  // measure-zero float tie: fair coin orders them
            auto cs = RngStream::make(seed, r, 3);
            first = cs.next_unit() < 0.5 ? 0 : 1;
        }
        const int other = 1 - first;
        const double t1 = te[first];
        const double uw = wH ? m.u_H : m.u_L;

        double pay[2], stop[2];
        bool tookR[2], full[2] = {false, false};
        if (!actR[first]) {
            // observed breakdown: the rival mimics S at the same instant
            pay[first] = pay[other] = -m.c * t1 + m.u_S;
            stop[first] = stop[other] = t1;
            tookR[first] = tookR[other] = false;
        } else {
            pay[first] = -m.c * t1 + uw;
            stop[first] = t1;
            tookR[first] = true;
            full[first] = true;
            // past the boundary only a breakthrough produces an R, so the
            // observer learns the state; inside, the posterior odds scale
            // by the state-H/state-L stopping density ratio (h + a)/h
            const double h1 =
                t1 < spec.boundary_t ? hazard_raw(t1, L0, m) : 0.0;
            const double pR =
                h1 > 0.0 ? p_of_lr(lr_at(L0, 2.0 * t1, m) * (h1 + m.a) / h1)
                         : 1.0;
            const Continuation c = continue_after_R(t1, pR, wH, st[other], m);
            pay[other] = -m.c * t1 + c.payoff;
            stop[other] = c.stop;
            tookR[other] = c.takes_R;
        }

        firstm += full[0] || full[1];
        if (tookR[0]) {
            (wH ? ownR_H : ownR_L) += 1;
            if (full[0]) (wH ? winH : winL) += 1;
        }

        for (int i = 0; i < 2; ++i) {
            pay_sum[i].add(pay[i]);
            pay_sq[i].add(pay[i] * pay[i]);
            stop_sum[i].add(stop[i]);
        }
        const auto g = static_cast<std::size_t>(
            std::lower_bound(rep.grid.begin(), rep.grid.end(), stop[0]) -
            rep.grid.begin());
        if (wH) {
            if (tookR[0]) dFH[g] += 1.0;
        } else {
            (tookR[0] ? dFL : dGL)[g] += 1.0;
        }
    }

    const auto n = static_cast<double>(reps);
    for (int i = 0; i < 2; ++i) {
        const double s1 = pay_sum[i].total();
        const double s2 = pay_sq[i].total();
        rep.mean_payoff[i] = s1 / n;
        const double var =
            n > 1 ? std::max(0.0, (s2 - n * rep.mean_payoff[i] *
                                            rep.mean_payoff[i]) /
                                      (n - 1.0))
                  : 0.0;
        rep.se_payoff[i] = std::sqrt(var / n);
        rep.mean_stop_time[i] = stop_sum[i].total() / n;
    }
    rep.first_mover_freq = static_cast<double>(firstm) / n;
    rep.tie0_freq = 0.0;  // no time-0 atoms in this construction
    rep.n_H = nH;
    rep.own_R_H = ownR_H;
    rep.own_R_L = ownR_L;
    rep.win_freq_H =
        ownR_H ? static_cast<double>(winH) / static_cast<double>(ownR_H) : 0.0;
    rep.win_freq_L =
        ownR_L ? static_cast<double>(winL) / static_cast<double>(ownR_L) : 0.0;
    rep.interior_ties = inter;

    const double nHd = static_cast<double>(std::max<std::uint64_t>(nH, 1));
    const double nLd =
        static_cast<double>(std::max<std::uint64_t>(reps - nH, 1));
    rep.emp_F_H.resize(G);
    rep.emp_F_L.resize(G);
    rep.emp_G_L.resize(G);
    double aH = 0.0, aL = 0.0, aG = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        aH += dFH[i];
        aL += dFL[i];
        aG += dGL[i];
        rep.emp_F_H[i] = aH / nHd;
        rep.emp_F_L[i] = aL / nLd;
        rep.emp_G_L[i] = aG / nLd;
    }
    return rep;
}

}  // namespace swald
