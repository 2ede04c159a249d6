#pragma once

#include <optional>

#include "swald/model.hpp"

namespace swald {

struct StaticCutoffs {
    double p_L;                  // immediate R nets zero unclashed
    std::optional<double> p_M;   // time-0 clash nets zero; empty if u_H <= dund_H
    double p_tilde;              // initial stopping-rate sign boundary
};

struct RandomizationWindow {
    double T_l;  // earliest viable randomization start
    double T_r;  // latest viable randomization start
};

// p^L, p^M, p~ from their odds closed forms.  Throws UndefinedValue when
// c >= b(-u_L) (the rate boundary has no positive root).
StaticCutoffs static_cutoffs(const ModelParams& m);

// Time-0 R-atom q that makes immediate R net exactly zero against it:
// q = (L0 u_H + u_L) / (L0 dund_H + dund_L).  Domain p0 in [p^L, p^M].
double immediate_mix_prob(double p0, const ModelParams& m);

// Latest start: first root of
//   b(-u_L) - c = L_t (c + a dbar_H (1-beta) e^{-at}).
// Equals 0 exactly at the boundary prior; throws NoRandomization above it.
double t_r(double p0, double beta, const ModelParams& m,
           const SolverControls& k = {});
inline double t_r(double p0, const ModelParams& m, const SolverControls& k = {}) {
    return t_r(p0, 0.0, m, k);
}

// Earliest start: first root of
//   L_t (u_H - (1-beta)(1 - e^{-at}) dbar_H) = -u_L,
// clamped to 0 when the prior already makes unclashed R weakly profitable.
double t_l(double p0, double beta, const ModelParams& m,
           const SolverControls& k = {});
inline double t_l(double p0, const ModelParams& m, const SolverControls& k = {}) {
    return t_l(p0, 0.0, m, k);
}

RandomizationWindow randomization_window(double p0, double beta,
                                         const ModelParams& m,
                                         const SolverControls& k = {});

// Shared learning-value kernel:
//   [scale * dbar_H/2 * e^{-at} + c/a - (-uref - c/b)/(L0 e^{(b-a)t})] e^{-at}.
// uref = u_L gives the randomization-start constant (J2 and its beta form);
// uref = u_S gives the intense-competition value-matching constant.
double value_kernel(double t, double L0, double scale, double uref,
                    const ModelParams& m);

// J2(T_hat) at prior p0 (beta = 0 form).
double j2_constant(double T_hat, double p0, const ModelParams& m);

// Prior at which learning toward start time T_hat nets zero:
// odds = (c/b) / (u_H - dbar_H/2 - c/a + J2(T_hat)).
double p_star_of_T(double T_hat, double p0, const ModelParams& m);

// Fixed point p* = p*(t_r(p*)); bisection over (0, min(p^L, p~)).
double fixed_point_pstar(const ModelParams& m, const SolverControls& k = {});

// Time-0 S-atom of the mixed-learning profile: solves
//   L0 = (c/b) / (u_H - (1-beta) dbar_H/2 - c/a + H(t_r^beta(beta)))
// with H the beta-scaled kernel.  Throws NotFound when no sign change.
double beta_mixed_learning(double p0, const ModelParams& m,
                           const SolverControls& k = {});

// N-player rate boundary: odds = (b(-u_L) - c) / ((Nv-1) a dbar_H + c).
double n_player_cutoff(int Nv, const ModelParams& m);

// c -> 0 limit of the rate boundary: odds = b(-u_L)/(a dbar_H).
double p_tilde_c_limit(const ModelParams& m);

// Intense competition: the time at which the second-mover R value crosses
// zero, ln(dbar_H / (dbar_H - u_H)) / a.  Requires the intense regime.
double t_ps(const ModelParams& m);

// Intense competition: the prior at which the learn-to-t_ps value at time 0
// is exactly zero (bisection on the closed-form W(0)).
double p_nr(const ModelParams& m, const SolverControls& k = {});

}  // namespace swald
