#include "swald/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "block_sum.hpp"
#include "swald/errors.hpp"
#include "swald/numerics.hpp"

namespace swald {

namespace {

using detail::BlockSum;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream RngStream::make(std::uint64_t seed, std::uint64_t rep,
                          std::uint64_t lane) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL);
    h = mix64(h ^ mix64(rep + 0xD1B54A32D192ED03ULL));
    h = mix64(h ^ mix64(lane + 0x8CB92BA72F3D8DD7ULL));
    return {h, 0};
}

double RngStream::next_unit() {
    const std::uint64_t z = mix64(base + 0x9E3779B97F4A7C15ULL * ++ctr);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

PathDraw sample_path(const MixedStrategy& s, bool state_H, RngStream& rng,
                     const ModelParams& m) {
    const double u = rng.next_unit();
    const double usig = rng.next_unit();
    if (u < s.atom_R0) return {0.0, true, true};
    if (u < s.atom_R0 + s.atom_S0) return {0.0, false, true};

    double t_strat = std::numeric_limits<double>::infinity();
    bool strat_R = true;
    if (s.s_stop) {
        t_strat = *s.s_stop;
        strat_R = false;
    } else if (s.path && !s.path->rho.empty()) {
        const auto& rho = s.path->rho;
        const auto& tt = s.path->t;
        const double r = u - s.atom_R0 - s.atom_S0;
        if (r < rho.back()) {
            // first node with rho > r; rho.front() = 0 <= r keeps j >= 1
            const auto it = std::upper_bound(rho.begin(), rho.end(), r);
            const std::size_t j =
                static_cast<std::size_t>(it - rho.begin());
            const double dr = rho[j] - rho[j - 1];
            t_strat = tt[j - 1] +
                      (dr > 0.0 ? (r - rho[j - 1]) / dr * (tt[j] - tt[j - 1])
                                : 0.0);
        } else if (1.0 - (s.atom_R0 + s.atom_S0 + rho.back()) < 1e-9) {
            t_strat = s.path->T_bar;  // saturating mixture: rounding sliver
        }
    }
    const double rate = state_H ? m.a : m.b;
    const double t_sig = -std::log1p(-usig) / rate;
    if (t_sig < t_strat) return {t_sig, state_H, false};
    return {t_strat, strat_R, false};
}

SimulationReport simulate(const MixedStrategy& s0, const MixedStrategy& s1,
                          double p0, std::uint64_t reps, std::uint64_t seed,
                          const ModelParams& m, double grid_step) {
    if (reps < 1) throw InvalidParams("reps must be at least 1");
    if (!(p0 > 0.0 && p0 < 1.0)) throw OutOfRange("prior must lie in (0, 1)");
    if (!(grid_step > 0.0)) throw InvalidParams("grid step must be positive");

    SimulationReport rep;
    rep.reps = reps;
    rep.seed = seed;
    const double hor =
        std::log((std::abs(m.u_H) + std::abs(m.u_L) + 1.0) * 1e12) / m.a;
    for (double x = 0.0; x < hor; x += grid_step) rep.grid.push_back(x);
    rep.grid.push_back(hor);
    const std::size_t G = rep.grid.size();
    std::vector<std::uint64_t> dFH(G + 1, 0), dFL(G + 1, 0), dGL(G + 1, 0);

    BlockSum pay_sum[2], pay_sq[2], stop_sum[2];
    std::uint64_t nH = 0, tie0 = 0, firstm = 0, inter = 0;
    std::uint64_t ownR_H = 0, ownR_L = 0, winH = 0, winL = 0;

    for (std::uint64_t r = 0; r < reps; ++r) {
        auto ws = RngStream::make(seed, r, 2);
        const bool wH = ws.next_unit() < p0;
        nH += wH;
        auto st0 = RngStream::make(seed, r, 0);
        auto st1 = RngStream::make(seed, r, 1);
        const PathDraw d0 = sample_path(s0, wH, st0, m);
        const PathDraw d1 = sample_path(s1, wH, st1, m);

        const double uw = wH ? m.u_H : m.u_L;
        const double dbar = wH ? m.dbar_H : m.dbar_L;
        const double dund = wH ? m.dund_H : m.dund_L;
        double pay0 = -m.c * d0.t, pay1 = -m.c * d1.t;
        bool full0 = false, full1 = false;  // took R, no rival R before it
        if (d0.takes_R && d1.takes_R) {
            if (d0.t < d1.t) {
                pay0 += uw;
                pay1 += uw - dbar;
                full0 = true;
            } else if (d1.t < d0.t) {
                pay1 += uw;
                pay0 += uw - dbar;
                full1 = true;
            } else if (d0.atom0 && d1.atom0) {
                pay0 += uw - dund;  // simultaneous grab at the planned atom
                pay1 += uw - dund;
            } else {
                ++inter;  // measure-zero float tie: fair coin orders them
                auto cs = RngStream::make(seed, r, 3);
                if (cs.next_unit() < 0.5) {
                    pay0 += uw;
                    pay1 += uw - dbar;
                    full0 = true;
                } else {
                    pay1 += uw;
                    pay0 += uw - dbar;
                    full1 = true;
                }
            }
        } else if (d0.takes_R) {
            pay0 += uw;
            pay1 += m.u_S;
            full0 = true;
        } else if (d1.takes_R) {
            pay1 += uw;
            pay0 += m.u_S;
            full1 = true;
        } else {
            pay0 += m.u_S;
            pay1 += m.u_S;
        }

        tie0 += d0.atom0 && d1.atom0;
        firstm += full0 || full1;
        if (!d0.atom0 && !d1.atom0 && d0.takes_R) {
            (wH ? ownR_H : ownR_L) += 1;
            if (full0) (wH ? winH : winL) += 1;
        }

        pay_sum[0].add(pay0);
        pay_sum[1].add(pay1);
        pay_sq[0].add(pay0 * pay0);
        pay_sq[1].add(pay1 * pay1);
        stop_sum[0].add(d0.t);
        stop_sum[1].add(d1.t);

        const std::size_t i0 = static_cast<std::size_t>(
            std::lower_bound(rep.grid.begin(), rep.grid.end(), d0.t) -
            rep.grid.begin());
        if (wH) {
            if (d0.takes_R) ++dFH[i0];
        } else {
            if (d0.takes_R) ++dFL[i0];
            else ++dGL[i0];
        }
    }

    const double n = static_cast<double>(reps);
    for (int i = 0; i < 2; ++i) {
        const double s1v = pay_sum[i].total();
        const double s2v = pay_sq[i].total();
        const double mean = s1v / n;
        rep.mean_payoff[i] = mean;
        const double var = reps > 1
                               ? std::max(0.0, (s2v - n * mean * mean) /
                                                   (n - 1.0))
                               : 0.0;
        rep.se_payoff[i] = std::sqrt(var / n);
        rep.mean_stop_time[i] = stop_sum[i].total() / n;
    }
    rep.first_mover_freq = static_cast<double>(firstm) / n;
    rep.tie0_freq = static_cast<double>(tie0) / n;
    rep.interior_ties = inter;
    rep.n_H = nH;
    rep.own_R_H = ownR_H;
    rep.own_R_L = ownR_L;
    rep.win_freq_H =
        ownR_H ? static_cast<double>(winH) / static_cast<double>(ownR_H) : 0.0;
    rep.win_freq_L =
        ownR_L ? static_cast<double>(winL) / static_cast<double>(ownR_L) : 0.0;

    const double nHd = nH > 0 ? static_cast<double>(nH) : 1.0;
    const double nLd = reps > nH ? static_cast<double>(reps - nH) : 1.0;
    rep.emp_F_H.resize(G);
    rep.emp_F_L.resize(G);
    rep.emp_G_L.resize(G);
    std::uint64_t aH = 0, aL = 0, aG = 0;
    for (std::size_t g = 0; g < G; ++g) {
        aH += dFH[g];
        aL += dFL[g];
        aG += dGL[g];
        rep.emp_F_H[g] = static_cast<double>(aH) / nHd;
        rep.emp_F_L[g] = static_cast<double>(aL) / nLd;
        rep.emp_G_L[g] = static_cast<double>(aG) / nLd;
    }
    return rep;
}

SimulationReport simulate(const EquilibriumProfile& prof, std::uint64_t reps,
                          std::uint64_t seed, const ModelParams& m,
                          double grid_step) {
    return simulate(prof.strategy, prof.strategy, prof.p0, reps, seed, m,
                    grid_step);
}

}  // namespace swald
