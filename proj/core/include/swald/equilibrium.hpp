#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swald/model.hpp"
#include "swald/ode.hpp"

namespace swald {

enum class RegimeLabel {
    ImmediateS,
    MixedLearning,
    RandomStopping,
    ImmediateMix,
    ImmediateR,
    CompetitionPure  // intense-competition (T_ps, S); never returned by classify
};

const char* to_string(RegimeLabel r);
RegimeLabel regime_from_string(const std::string& s);  // throws OutOfRange

// Symmetric strategy: optional time-zero atoms, then learn (R on
// breakthrough, S on breakdown), then either the randomized-stopping leg
// (path; stops are R) or a deterministic safe stop (s_stop; take S there
// absent signals).  path and s_stop are mutually exclusive.
struct MixedStrategy {
    double atom_R0 = 0.0;
    double atom_S0 = 0.0;
    std::optional<StrategyPath> path;
    std::optional<double> s_stop;
};

struct EquilibriumProfile {
    RegimeLabel regime;
    double p0 = 0.5;
    MixedStrategy strategy;
    // constants as applicable to the regime
    double q = 0.0;     // ImmediateMix R-atom
    double beta = 0.0;  // MixedLearning S-atom
    double T_hat = 0.0;
    double T_bar = 0.0;
    double window_lo = 0.0;  // admissible start window [T_l, T_r]
    double window_hi = 0.0;
};

struct Classification {
    std::vector<RegimeLabel> regimes;  // every condition that holds at p0
    std::vector<std::string> notes;    // warnings and boundary diagnostics
    double p_und = 0.0;                // cutoffs the conditions were read from
    double p_star = 0.0;               // NaN if the fixed point failed
    double p_L = 0.0;
    std::optional<double> p_M;
    double p_tilde = 0.0;
};

// Evaluates the five regime conditions independently (ImmediateS iff
// p0 <= p_und; MixedLearning iff p_und < p0 < p_star; RandomStopping iff
// p_star <= p0 < p_tilde; ImmediateMix iff p_L < p0 < p_M; ImmediateR iff
// p0 >= p_M).  Overlaps yield several entries; an empty set is reported
// with nearest-boundary diagnostics in notes.  Attaches a warning when the
// characterization hypothesis b < 2a fails.  Gentle competition only.
Classification classify(double p0, const ModelParams& m,
                        const SolverControls& k = {});

// Assembles the symmetric profile for one regime.  `that` picks the
// randomization start inside the admissible window (default: midpoint) for
// the path-carrying regimes.  Throws OutOfRange when the regime's condition
// fails at p0 or `that` falls outside the window.
EquilibriumProfile build_equilibrium(RegimeLabel regime, double p0,
                                     const ModelParams& m,
                                     const SolverControls& k = {},
                                     std::optional<double> that = {});

// Pre-randomization continuation value at time t <= T_hat of "learn, then
// randomize from T_hat" (no-signal conditional):
//   W(t) = p_t [(u_H - (1-beta) dbar_H) - c/a + (1-beta) dbar_H/2 e^{-at}]
//          + (1-p_t)(-c/b) + p_t e^{at} K(T_hat)
// with K the shared learning-value kernel at scale 1-beta.  W(T_hat) value-
// matches the stop payoff, and W(0) = 0 exactly on the regime boundary.
double w_value(double t, double T_hat, double beta, double p0,
               const ModelParams& m);

}  // namespace swald
