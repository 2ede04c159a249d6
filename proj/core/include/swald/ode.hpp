#pragma once

#include <vector>

#include "swald/model.hpp"

namespace swald {

// Randomized-stopping leg of a symmetric profile.  rho is the no-signal
// strategic stop measure, scaled so it saturates at 1 - beta; F_H / F_L are
// the induced single-opponent R-stop CDFs by state,
//   F_H(t) = (1-beta)(1 - e^{-at}) + e^{-at} rho(t),   F_L' = e^{-bt} rho'.
// The grid runs from time zero (rho = 0 before T_hat) to saturation at T_bar.
// Against Nv - 1 symmetric opponents the any-rival CDF is 1 - (1-F)^{Nv-1}.
struct StrategyPath {
    std::vector<double> t;
    std::vector<double> rho;
    std::vector<double> F_H;
    std::vector<double> F_L;
    double T_hat = 0.0;
    double T_bar = 0.0;
    double beta = 0.0;
    int Nv = 2;
    double p0 = 0.5;  // prior the path was solved at
};

// Stopping rate at the start instant (rho = F_L = 0): the sign decides
// whether randomized stopping can begin at T_hat at all.
double initial_slope(double p0, double beta, int Nv, double T_hat,
                     const ModelParams& m);

// Integrates the opponent-indifference rate equation
//   rho' [L_t dbar_H (Nv-1) e^{-a(Nv-1)t} (1-rho)^{Nv-2}
//         + dbar_L (Nv-1) (1-F_L)^{Nv-2} e^{-bt}]
//     = b(-u_L) - c - c L_t + b dbar_L (1 - (1-F_L)^{Nv-1})
//       - L_t dbar_H (Nv-1) a e^{-a(Nv-1)t} (1-rho)^{Nv-1}
// (two-player form carries the time-zero S-atom beta through 1-beta-rho)
// from T_hat until rho saturates, with T_bar refined by bisection inside the
// final step.  beta > 0 requires Nv == 2.  Throws NoRandomization when the
// start slope is nonpositive, MonotonicityBreak if the rate turns
// nonpositive before saturation, NoCrossing if the horizon is exhausted.
StrategyPath solve_master_ode(double p0, double T_hat, double beta,
                              const ModelParams& m,
                              const SolverControls& k = {}, int Nv = 2);

// Max defect of the stopping-indifference identity
//   c + p_t Fb_H' dbar_H + (1-p_t) Fb_L' dbar_L
//     = (1-p_t) b (-u_L + Fb_L dbar_L)
// over the interior of [T_hat, T_bar], where Fb are the any-rival aggregate
// CDFs and derivatives are centered differences on the stored grid.
double indifference_residual(const StrategyPath& path, const ModelParams& m);

// Independent second-order check (two-player): z(t) = int e^{-bs} rho ds
// from T_hat satisfies z'' + g1 z' + g2 z = g3 with coefficients free of the
// solved path.  Returns the max interior defect.
double z_form_residual(const StrategyPath& path, const ModelParams& m);

}  // namespace swald
