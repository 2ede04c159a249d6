#pragma once

#include "swald/errors.hpp"

namespace swald {

// Which side of zero the second R prize in state H falls on:
// gentle competition keeps u_H - dbar_H above the safe payoff,
// intense competition pushes it below.
enum class CompetitionRegime { Gentle, Intense };

struct ModelParams {
    double u_H = 1.0;      // state-H first-mover prize
    double u_L = -1.0;     // state-L first-mover prize
    double dbar_H = 0.7;   // late-mover penalty, state H
    double dbar_L = 0.7;   // late-mover penalty, state L
    double dund_H = 0.5;   // simultaneous-move penalty, state H
    double dund_L = 0.5;   // simultaneous-move penalty, state L
    double a = 0.6;        // breakthrough rate (state H revealing)
    double b = 0.8;        // breakdown rate (state L revealing)
    double c = 0.025;      // flow cost of information
    double u_S = 0.0;      // safe-action payoff
    int N = 2;             // player count
    CompetitionRegime regime = CompetitionRegime::Gentle;  // set by validate_params
};

// Checks b > a > 0, c > 0, N >= 2, dbar > dund > 0 per state, and that
// exactly one competition regime holds; returns the tagged record.
// Throws InvalidParams naming the violated constraint.
ModelParams validate_params(ModelParams raw);

// Shared numeric controls (config-overridable through the CLI).
struct SolverControls {
    double ode_step = 1e-4;    // fixed integrator step
    double scan_step = 1e-3;   // forward-scan resolution for first crossings
    double bisect_tol = 1e-10; // root / fixed-point tolerance
    double horizon = 200.0;    // scan horizon in time units
};

// ---- likelihood-ratio arithmetic (canonical belief representation) ----

double lr_of_p(double p);            // p/(1-p); +inf at p = 1
double p_of_lr(double L);            // L/(1+L); 1 at +inf

// No-signal belief drift: L_t = L_0 e^{(b-a)t}.
double lr_at(double L0, double t, const ModelParams& m);
double belief_at(double p0, double t, const ModelParams& m);

// Probability of no revealing signal by t: p0 e^{-at} + (1-p0) e^{-bt}.
double no_signal_prob(double p0, double t, const ModelParams& m);

// Expected R payoff at belief p against a rival who has taken R with
// probability F_H / F_L by state (no atom at the evaluation instant):
// p (u_H - F_H dbar_H) + (1-p)(u_L - F_L dbar_L).
double r_payoff(double p, double F_H, double F_L, const ModelParams& m);

}  // namespace swald
