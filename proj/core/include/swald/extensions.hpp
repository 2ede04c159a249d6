#pragma once

#include <cstdint>
#include <vector>

#include "swald/equilibrium.hpp"
#include "swald/model.hpp"
#include "swald/simulator.hpp"

namespace swald {

// Intense competition: learning-value curve for the pure profile
// "learn until T_ps, then take S absent signals".
struct CompetitionSolution {
    double T_ps = 0.0;
    double p_nr = 0.0;
    std::vector<double> t;    // grid on [0, T_ps]
    std::vector<double> W_L;  // learning value along the grid
    std::vector<double> psi;  // continuation kernel along the grid
};

// W_L(t) = p_t((u_H - dbar_H) - c/a + dbar_H/2 e^{-at}) - (1 - p_t) c/b
//          + p_t e^{at} psi(T_ps), with psi the value-matching kernel
// shared with J2.  Returns 0 for t > T_ps (the game is over).
// Throws RegimeError outside the intense regime.
double competition_value(double t, double p0, const ModelParams& m);

CompetitionSolution competition_solution(double p0, const ModelParams& m,
                                         const SolverControls& k = {});

// Symmetric pure profile (deterministic safe stop at T_ps).  Requires
// p0 in (p_nr, p_tilde); the rejection names both bounds.
EquilibriumProfile competition_equilibrium(double p0, const ModelParams& m,
                                           const SolverControls& k = {});

// Belief when both players' inaction is public: odds drift at twice the
// solitary rate, L_t = L_0 e^{2(b-a)t}.
double observable_belief(double p0, double t, const ModelParams& m);

// Mimic-and-randomize stopping hazard under observable actions:
//   h(t) = [b(-u_L) - c - L_t(a(p_t(dbar_H - dbar_L) + dbar_L) + c)]
//          / (L_t dbar_H + dbar_L),
// with L_t the observable odds.  Requires equal R penalties across states
// (RegimeError) and p_L < p0 < p_tilde (OutOfRange).
double mrss_hazard(double t, double p0, const ModelParams& m);

struct MrssSpec {
    std::vector<double> t;       // grid on [0, boundary_t] when feasible
    std::vector<double> hazard;  // h along the grid
    std::vector<double> belief;  // observable belief along the grid
    double boundary_t = 0.0;     // time at which h reaches zero
    bool feasible = false;       // p_L < p0 < p_tilde
};

// Hazard/belief curves up to the positivity boundary.  Throws RegimeError
// on unequal R penalties; infeasible priors get empty curves.
MrssSpec mrss_spec(double p0, const ModelParams& m,
                   const SolverControls& k = {});

// Observable-actions play: strategic R arrives at hazard h, an observed S
// is mimicked at once, and an observed R hands the continuing player the
// solitary policy at the density-updated belief with penalized prizes.
SimulationReport mrss_simulate(double p0, std::uint64_t reps,
                               std::uint64_t seed, const ModelParams& m,
                               const SolverControls& k = {});

}  // namespace swald
