#include "swald/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace swald {

namespace {

// Linear interpolation of samples (ts, vs) at x, clamped beyond the ends.
double interp(const std::vector<double>& ts, const std::vector<double>& vs,
              double x) {
    if (x <= ts.front()) return vs.front();
    if (x >= ts.back()) return vs.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double h = ts[i] - ts[i - 1];
    const double w = h > 0.0 ? (x - ts[i - 1]) / h : 0.0;
    return vs[i - 1] + w * (vs[i] - vs[i - 1]);
}

double atom_sum_H(const std::vector<RAtom>& atoms, double x, bool strict) {
    double s = 0.0;
    for (const auto& at : atoms)
        if (strict ? at.t < x : at.t <= x) s += at.m_H;
    return s;
}

double atom_sum_L(const std::vector<RAtom>& atoms, double x, bool strict) {
    double s = 0.0;
    for (const auto& at : atoms)
        if (strict ? at.t < x : at.t <= x) s += at.m_L;
    return s;
}

double tail_horizon(const ModelParams& m) {
    // pi_t <= e^{-at}; past this point any payoff-weighted tail is < 1e-12
    const double scale = std::abs(m.u_H) + std::abs(m.u_L) + 1.0;
    return std::log(scale * 1e12) / m.a;
}

}  // namespace

double InducedStopDistribution::f_H(double x) const {
    return interp(t, F_H, x) + atom_sum_H(r_atoms, x, false);
}
double InducedStopDistribution::f_L(double x) const {
    return interp(t, F_L, x) + atom_sum_L(r_atoms, x, false);
}
double InducedStopDistribution::g_H(double x) const {
    return interp(t, G_H, x) + atom_S0;
}
double InducedStopDistribution::g_L(double x) const {
    return interp(t, G_L, x) + atom_S0;
}
double InducedStopDistribution::f_H_before(double x) const {
    return interp(t, F_H, x) + atom_sum_H(r_atoms, x, true);
}
double InducedStopDistribution::f_L_before(double x) const {
    return interp(t, F_L, x) + atom_sum_L(r_atoms, x, true);
}
double InducedStopDistribution::clash_H(double x) const {
    double s = 0.0;
    for (const auto& at : r_atoms)
        if (at.t == x) s += at.m_H;
    return s;
}
double InducedStopDistribution::clash_L(double x) const {
    double s = 0.0;
    for (const auto& at : r_atoms)
        if (at.t == x) s += at.m_L;
    return s;
}

InducedStopDistribution induced_distribution(const MixedStrategy& s,
                                             const ModelParams& m,
                                             const SolverControls& k) {
    if (s.path && s.atom_R0 > 0.0)
        throw OutOfRange(
            "an R-atom combined with a stopping path is not a profile this "
            "model produces");
    if (s.path && s.s_stop)
        throw OutOfRange(
            "a stopping path and a deterministic safe stop are mutually "
            "exclusive");
    if (s.s_stop && !(*s.s_stop >= 0.0))
        throw OutOfRange("safe-stop time must be nonnegative");
    InducedStopDistribution d;
    d.atom_R0 = s.atom_R0;
    d.atom_S0 = s.atom_S0;
    const double learn0 = std::max(0.0, 1.0 - s.atom_R0 - s.atom_S0);

    double hor = tail_horizon(m);
    if (s.path) hor = std::max(hor, s.path->T_bar + 1.0);
    if (s.s_stop) hor = std::max(hor, *s.s_stop + 1.0);
    d.horizon = hor;

    if (s.path) {
        const auto& p = *s.path;
        d.T_hat = p.T_hat;
        d.T_bar = p.T_bar;
        d.t = p.t;
        const std::size_t n = p.t.size();
        d.F_H.resize(n);
        d.F_L.resize(n);
        d.G_H.assign(n, 0.0);
        d.G_L.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            d.F_H[i] = p.F_H[i];
            d.F_L[i] = p.F_L[i];
            d.G_L[i] = (1.0 - std::exp(-m.b * p.t[i])) * (learn0 - p.rho[i]) +
                       (p.rho[i] - p.F_L[i]);
        }
        // past T_bar every learner has stopped; only the tail grid grows
        const double FL_end = p.F_L.back();
        for (double x = p.T_bar + k.scan_step;; x += k.scan_step) {
            const double tx = std::min(x, hor);
            d.t.push_back(tx);
            d.F_H.push_back(learn0);
            d.F_L.push_back(FL_end);
            d.G_H.push_back(0.0);
            d.G_L.push_back(learn0 - FL_end);
            if (tx == hor) break;
        }
    } else {
        for (double x = 0.0; x < hor; x += k.scan_step) d.t.push_back(x);
        d.t.push_back(hor);
        if (s.s_stop) {
            d.t.push_back(*s.s_stop);
            std::sort(d.t.begin(), d.t.end());
            d.t.erase(std::unique(d.t.begin(), d.t.end()), d.t.end());
            d.T_hat = d.T_bar = *s.s_stop;
        }
        const std::size_t n = d.t.size();
        d.F_H.resize(n);
        d.F_L.assign(n, 0.0);
        d.G_H.assign(n, 0.0);
        d.G_L.resize(n);
        // learners take R on breakthrough (S on breakdown) until the safe
        // stop, if any; at the stop every remaining learner takes S
        const double stop = s.s_stop ? *s.s_stop : hor + 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = d.t[i];
            d.F_H[i] =
                learn0 * (1.0 - std::exp(-m.a * std::min(t, stop)));
            if (t < stop) {
                d.G_L[i] = (1.0 - std::exp(-m.b * t)) * learn0;
            } else {
                d.G_H[i] = learn0 * std::exp(-m.a * stop);
                d.G_L[i] = learn0;
            }
        }
    }

    if (s.atom_R0 > 0.0) d.r_atoms.push_back({0.0, s.atom_R0, s.atom_R0});
    return d;
}

InducedStopDistribution preemption_demo_distribution(double tau, double mu,
                                                     const ModelParams& m,
                                                     const SolverControls& k) {
    if (!(tau > 0.0) || !(mu > 0.0) || !(mu <= 1.0))
        throw OutOfRange("demo atom needs tau > 0 and mu in (0, 1]");
    InducedStopDistribution d;
    d.horizon = std::max(tail_horizon(m), tau + 1.0);
    for (double x = 0.0; x < d.horizon; x += k.scan_step) d.t.push_back(x);
    d.t.push_back(d.horizon);
    d.t.push_back(tau);
    std::sort(d.t.begin(), d.t.end());
    d.t.erase(std::unique(d.t.begin(), d.t.end()), d.t.end());

    const std::size_t n = d.t.size();
    d.F_H.resize(n);
    d.F_L.assign(n, 0.0);
    d.G_H.assign(n, 0.0);
    d.G_L.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = d.t[i];
        if (x < tau) {
            d.F_H[i] = 1.0 - std::exp(-m.a * x);
            d.G_L[i] = 1.0 - std::exp(-m.b * x);
        } else {
            // survivors at tau keep learning with mass 1 - mu
            d.F_H[i] = (1.0 - std::exp(-m.a * tau)) +
                       (1.0 - mu) * (std::exp(-m.a * tau) - std::exp(-m.a * x));
            d.G_L[i] = (1.0 - std::exp(-m.b * tau)) +
                       (1.0 - mu) * (std::exp(-m.b * tau) - std::exp(-m.b * x));
        }
    }
    d.r_atoms.push_back(
        {tau, mu * std::exp(-m.a * tau), mu * std::exp(-m.b * tau)});
    return d;
}

namespace {

struct FlowEval {
    const InducedStopDistribution& d;
    double p0, L0;
    const ModelParams& m;

    // integrand pi_t [p_t a (u_H - f_H dbar_H) - c] with f_H supplied
    double operator()(double t, double fH) const {
        const double pi = no_signal_prob(p0, t, m);
        const double p = p_of_lr(lr_at(L0, t, m));
        return pi * (p * m.a * (m.u_H - fH * m.dbar_H) - m.c);
    }
};

// terminal payoff of stopping at T: dbar on mass strictly before T,
// the simultaneous penalty on any atom exactly at T
double terminal_R(const InducedStopDistribution& d, double T, double p0,
                  const ModelParams& m) {
    const double p = belief_at(p0, T, m);
    const double FHm = d.f_H_before(T), FLm = d.f_L_before(T);
    const double cH = d.clash_H(T), cL = d.clash_L(T);
    return p * (m.u_H - FHm * m.dbar_H - cH * m.dund_H) +
           (1.0 - p) * (m.u_L - FLm * m.dbar_L - cL * m.dund_L);
}

}  // namespace

double stop_value(double T, StopAction action,
                  const InducedStopDistribution& dist, double p0,
                  const ModelParams& m) {
    if (!(T >= 0.0)) throw OutOfRange("stop time must be nonnegative");
    const FlowEval flow{dist, p0, lr_of_p(p0), m};

    double I = 0.0, atomsH = 0.0;
    std::size_t i = 0;
    std::size_t next_atom = 0;
    const auto& ts = dist.t;
    while (i + 1 < ts.size() && ts[i + 1] <= T) {
        // atoms are grid nodes: include any mass at the cell's left end
        while (next_atom < dist.r_atoms.size() &&
               dist.r_atoms[next_atom].t <= ts[i])
            atomsH += dist.r_atoms[next_atom++].m_H;
        const double wl = flow(ts[i], dist.F_H[i] + atomsH);
        const double wr = flow(ts[i + 1], dist.F_H[i + 1] + atomsH);
        I += 0.5 * (wl + wr) * (ts[i + 1] - ts[i]);
        ++i;
    }
    if (T > ts[i]) {  // partial last cell (contains no atom nodes)
        while (next_atom < dist.r_atoms.size() &&
               dist.r_atoms[next_atom].t <= ts[i])
            atomsH += dist.r_atoms[next_atom++].m_H;
        const double wl = flow(ts[i], dist.F_H[i] + atomsH);
        const double wr = flow(T, interp(ts, dist.F_H, T) + atomsH);
        I += 0.5 * (wl + wr) * (T - ts[i]);
    }

    double term = m.u_S;
    if (action != StopAction::S) {
        const double ur = terminal_R(dist, T, p0, m);
        term = action == StopAction::R ? ur : std::max(ur, m.u_S);
    }
    return I + no_signal_prob(p0, T, m) * term;
}

BestResponseReport best_response_sweep(const InducedStopDistribution& dist,
                                       double p0, const ModelParams& m,
                                       double candidate_value, double eps) {
    const FlowEval flow{dist, p0, lr_of_p(p0), m};
    const auto& ts = dist.t;
    const std::size_t n = ts.size();

    BestResponseReport rep;
    rep.grid = ts;
    rep.value.resize(n);
    rep.value_R.resize(n);
    rep.flow_prefix.resize(n);

    double I = 0.0, atomsH = 0.0;
    std::size_t next_atom = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double wl = flow(ts[i - 1], dist.F_H[i - 1] + atomsH);
            const double wr = flow(ts[i], dist.F_H[i] + atomsH);
            I += 0.5 * (wl + wr) * (ts[i] - ts[i - 1]);
        }
        rep.flow_prefix[i] = I;
        const double pi = no_signal_prob(p0, ts[i], m);
        const double ur = terminal_R(dist, ts[i], p0, m);
        rep.value_R[i] = I + pi * ur;
        rep.value[i] = I + pi * std::max(ur, m.u_S);
        // the mass at this node joins the "strictly before" set from now on
        while (next_atom < dist.r_atoms.size() &&
               dist.r_atoms[next_atom].t <= ts[i])
            atomsH += dist.r_atoms[next_atom++].m_H;
    }

    rep.max_value = *std::max_element(rep.value.begin(), rep.value.end());
    const double tie = 1e-12 * (1.0 + std::abs(rep.max_value));
    for (std::size_t i = 0; i < n; ++i)
        if (rep.value[i] >= rep.max_value - tie) rep.argmax_set.push_back(ts[i]);

    rep.candidate_value = candidate_value;
    rep.deviation_gain = rep.max_value - candidate_value;
    rep.eps = eps;
    rep.certified =
        !std::isnan(rep.deviation_gain) && rep.deviation_gain <= eps;
    return rep;
}

BestResponseReport best_response_sweep(const MixedStrategy& opponent, double p0,
                                       const ModelParams& m,
                                       const SolverControls& k,
                                       double candidate_value, double eps) {
    return best_response_sweep(induced_distribution(opponent, m, k), p0, m,
                               candidate_value, eps);
}

CertificationReport check_equilibrium(const EquilibriumProfile& profile,
                                      double eps, const ModelParams& m,
                                      const SolverControls& k) {
    const auto dist = induced_distribution(profile.strategy, m, k);
    auto sweep = best_response_sweep(dist, profile.p0, m);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    CertificationReport rep;
    rep.eps = eps;
    rep.max_value = sweep.max_value;
    rep.min_UR_support = nan;
    rep.support_flatness = nan;

    // value of each prescribed branch; the mixture value is mass-weighted
    double prescribed = profile.strategy.atom_S0 * m.u_S;
    double worst_branch = std::numeric_limits<double>::infinity();
    if (profile.strategy.atom_S0 > 0.0) worst_branch = m.u_S;
    if (profile.strategy.atom_R0 > 0.0) {
        const double v0 = stop_value(0.0, StopAction::R, dist,
                                     profile.p0, m);
        prescribed += profile.strategy.atom_R0 * v0;
        worst_branch = std::min(worst_branch, v0);
    }
    if (profile.strategy.path) {
        const auto& p = *profile.strategy.path;
        // Stieltjes integral of the R-stop value against the planned-stop
        // mass, on the sweep grid (the path grid is its head)
        double acc = 0.0;
        double flat_lo = std::numeric_limits<double>::infinity();
        double flat_hi = -flat_lo;
        double ur_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
            const double dm = p.rho[i + 1] - p.rho[i];
            if (dm > 0.0)
                acc += 0.5 * (sweep.value_R[i] + sweep.value_R[i + 1]) * dm;
        }
        for (std::size_t i = 0; i < p.t.size(); ++i) {
            if (p.t[i] < p.T_hat) continue;
            worst_branch = std::min(worst_branch, sweep.value_R[i]);
            flat_lo = std::min(flat_lo, sweep.value[i]);
            flat_hi = std::max(flat_hi, sweep.value[i]);
            const double ur = terminal_R(dist, p.t[i], profile.p0, m);
            ur_min = std::min(ur_min, ur);
        }
        prescribed += acc;
        rep.min_UR_support = ur_min;
        rep.support_flatness = flat_hi - flat_lo;
    }
    if (profile.strategy.s_stop) {
        const double learn0 =
            std::max(0.0, 1.0 - profile.strategy.atom_R0 -
                              profile.strategy.atom_S0);
        const double vs = stop_value(*profile.strategy.s_stop,
                                     StopAction::S, dist, profile.p0, m);
        prescribed += learn0 * vs;
        worst_branch = std::min(worst_branch, vs);
        rep.support_flatness = 0.0;  // a single prescribed stop time
    }

    rep.prescribed_value = prescribed;
    rep.deviation_gain = rep.max_value - prescribed;
    rep.support_gap = rep.max_value - worst_branch;
    rep.certified = rep.deviation_gain <= eps && rep.support_gap <= eps;

    sweep.candidate_value = prescribed;
    sweep.deviation_gain = rep.deviation_gain;
    sweep.eps = eps;
    sweep.certified = rep.certified;
    rep.sweep = std::move(sweep);
    return rep;
}

double hjb_residual(const InducedStopDistribution& dist,
                    const BestResponseReport& report, double t, double p0,
                    const ModelParams& m) {
    const auto& ts = report.grid;
    if (ts.size() < 3 || t < ts[1] || t > ts[ts.size() - 2])
        throw OutOfRange("time outside the interior of the report grid");
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (i > 0 && t - ts[i - 1] < ts[i] - t) --i;
    i = std::min(std::max<std::size_t>(i, 1), ts.size() - 2);

    // continuation value along the no-signal path at the three nodes,
    // from the suffix max of the sweep
    double v[3];
    for (int j = -1; j <= 1; ++j) {
        const std::size_t idx = i + static_cast<std::size_t>(j + 1) - 1;
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = idx;
        for (std::size_t q = idx; q < ts.size(); ++q)
            if (report.value[q] > best) { best = report.value[q]; arg = q; }
        // stopping at once is optimal: take the stop payoff directly rather
        // than round-tripping through the flow prefix (cancellation)
        v[j + 1] = (arg == idx)
                       ? std::max(terminal_R(dist, ts[idx], p0, m), m.u_S)
                       : (best - report.flow_prefix[idx]) /
                             no_signal_prob(p0, ts[idx], m);
    }
    const double hl = ts[i] - ts[i - 1], hr = ts[i + 1] - ts[i];
    const double vdot = (v[2] * hl * hl - v[0] * hr * hr +
                         v[1] * (hr * hr - hl * hl)) /
                        (hl * hr * (hl + hr));

    const double p = belief_at(p0, ts[i], m);
    const double lam = m.a * p + m.b * (1.0 - p);
    const double gen = vdot - lam * v[1] +
                       p * m.a * (m.u_H - dist.f_H(ts[i]) * m.dbar_H) - m.c;
    const double U = std::max(terminal_R(dist, ts[i], p0, m), m.u_S);
    return std::abs(std::max(gen, U - v[1]));
}

}  // namespace swald
