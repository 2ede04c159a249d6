#pragma once

#include <limits>
#include <vector>

#include "swald/equilibrium.hpp"
#include "swald/model.hpp"

namespace swald {

// A point mass of the rival's R-CDF: the state-conditional probabilities
// that the rival takes R exactly at t.  A deviator stopping at precisely
// this instant clashes with the mass and earns the simultaneous penalty.
struct RAtom {
    double t = 0.0;
    double m_H = 0.0;
    double m_L = 0.0;
};

// Rival stopping data induced by a strategy: state-conditional
// probabilities of having taken R (F) or S (G) by each grid time.  The
// vectors hold the continuous parts; the accessor methods add the atoms
// and are the CDF contract (right-continuous, nondecreasing, F + G <= 1,
// f_H(0) = atom_R0, g_H(0) = atom_S0).
struct InducedStopDistribution {
    std::vector<double> t;                   // 0 .. horizon, sorted
    std::vector<double> F_H, F_L, G_H, G_L;  // continuous parts at the nodes
    std::vector<RAtom> r_atoms;              // jump masses (atom times are nodes)
    double atom_R0 = 0.0, atom_S0 = 0.0;
    double T_hat = 0.0, T_bar = 0.0;  // randomization leg; both 0 without one
    double horizon = 0.0;

    double f_H(double x) const;  // CDFs including atoms, right-continuous
    double f_L(double x) const;
    double g_H(double x) const;
    double g_L(double x) const;
    double f_H_before(double x) const;  // left limits (atoms strictly before x)
    double f_L_before(double x) const;
    double clash_H(double x) const;  // R mass exactly at x, else 0
    double clash_L(double x) const;
};

// Samples the distributions a strategy induces: the path grid (when there
// is one) extended past T_bar, or a uniform grid at k.scan_step, out to a
// horizon where the no-signal mass is below 1e-12 in every state.  Throws
// OutOfRange for an R-atom combined with a path (no such profile exists).
InducedStopDistribution induced_distribution(const MixedStrategy& s,
                                             const ModelParams& m,
                                             const SolverControls& k = {});

// Pure learner who takes R with probability mu at time tau if still
// uninformed, then keeps learning.  Exists to demonstrate the preemption
// deviation: stopping just before tau strictly beats stopping at or after.
InducedStopDistribution preemption_demo_distribution(double tau, double mu,
                                                     const ModelParams& m,
                                                     const SolverControls& k = {});

enum class StopAction { R, S, Best };

// Expected payoff of "learn, act on signals, stop at T with the final
// action" against the rival distribution:
//   V(T) = int_0^T pi_t [p_t a (u_H - f_H(t) dbar_H) - c] dt + pi_T U(T)
// by composite trapezoid on the distribution grid.  U applies dbar to the
// rival mass strictly before T and the simultaneous penalty dund to any
// atom exactly at T; Best takes max{U_R, u_S}.
double stop_value(double T, StopAction action,
                  const InducedStopDistribution& dist, double p0,
                  const ModelParams& m);

// Deviation landscape against a fixed rival: V(T) with the best final
// action at every grid node.
struct BestResponseReport {
    std::vector<double> grid;
    std::vector<double> value;        // best-action stop value at each node
    std::vector<double> value_R;      // R-action stop value at each node
    std::vector<double> flow_prefix;  // learning-flow integral up to each node
    double max_value = 0.0;
    std::vector<double> argmax_set;   // grid times attaining the max
    double candidate_value = 0.0;     // NaN when no candidate was supplied
    double deviation_gain = 0.0;      // max_value - candidate_value
    bool certified = false;           // deviation_gain <= eps
    double eps = 1e-4;
};

// Sweeps every grid node as a deterministic deviation stop time.
// candidate_value (when finite) is the payoff of the strategy under test;
// the report's gain and certificate are relative to it.
BestResponseReport best_response_sweep(const InducedStopDistribution& dist,
                                       double p0, const ModelParams& m,
                                       double candidate_value =
                                           std::numeric_limits<double>::quiet_NaN(),
                                       double eps = 1e-4);
BestResponseReport best_response_sweep(const MixedStrategy& opponent, double p0,
                                       const ModelParams& m,
                                       const SolverControls& k = {},
                                       double candidate_value =
                                           std::numeric_limits<double>::quiet_NaN(),
                                       double eps = 1e-4);

// Epsilon-equilibrium certificate for a symmetric profile: sweeps
// deviations against the profile's own strategy; certified iff the
// prescribed mixture's value is within eps of the best deviation AND every
// point of the randomization support is within eps of it.
struct CertificationReport {
    double prescribed_value = 0.0;  // mass-weighted value of the mixture
    double max_value = 0.0;
    double deviation_gain = 0.0;  // max_value - prescribed_value
    double support_gap = 0.0;     // worst shortfall across the support
    double min_UR_support = 0.0;  // NaN for atom-only profiles
    double support_flatness = 0.0;  // max-min of V on [T_hat, T_bar]; NaN ditto
    bool certified = false;
    double eps = 1e-4;
    BestResponseReport sweep;
};

CertificationReport check_equilibrium(const EquilibriumProfile& profile,
                                      double eps, const ModelParams& m,
                                      const SolverControls& k = {});

// Dynamic-programming residual of the deviator's value along the no-signal
// path, at the report grid node nearest t:
//   max{ v' - (a p_t + b(1-p_t)) v + p_t a (u_H - f_H dbar_H) - c,  U - v }
// with v(t) = (max_{T>=t} V(T) - flow_prefix(t)) / pi_t and v' by centered
// finite differences.  Exactly 0 where stopping is optimal; ~0 up to the
// finite-difference error in the learning region; meaningless at the kink
// between the two, which callers exclude.
double hjb_residual(const InducedStopDistribution& dist,
                    const BestResponseReport& report, double t, double p0,
                    const ModelParams& m);

}  // namespace swald
