#pragma once

#include "swald/model.hpp"

namespace swald {

// Solitary-learner free boundary: learn on (p_und, p_bar), act outside.
struct DmSolution {
    double p_bar;   // upper boundary (take R at or above)
    double p_und;   // lower boundary (take S at or below)
    double K;       // free constant of the learning-region value
    double c_bar;   // cost threshold above which no learning region exists
    double L_bar;   // p_bar in odds
    double L_und;   // p_und in odds
};

enum class DmPolicy { TakeS, Learn, TakeR };

// Closed-form boundaries; p_und by bracketed bisection in odds space.
// Throws NoLearningRegion (carrying c_bar) when c >= c_bar.
DmSolution dm_cutoffs(const ModelParams& m);

// Value function: u_S below p_und, immediate-R payoff above p_bar, the
// learning-region closed form in between.  Continuous, kink at p_und.
double dm_value(double p, const DmSolution& s, const ModelParams& m);

DmPolicy dm_policy(double p, const DmSolution& s);

struct PastingResiduals {
    double value_upper;         // |V(p_bar) - U_R(p_bar)|
    double slope_upper;         // |V'(p_bar) - U_R'(p_bar)| (analytic, odds space)
    double value_lower;         // |V(p_und) - u_S|
    double convexity_min;       // min second difference of V on [p_und, p_bar]
    double supersolution_max;   // max HJB operator over the stopped regions
    double subdifferential_max; // max HJB operator over kink test slopes
};

// Boundary-condition and viscosity-direction diagnostics.
PastingResiduals smooth_pasting_residuals(const DmSolution& s, const ModelParams& m);

// Stationary HJB operator at belief p for value v and p-space slope vp:
// -c + p a (u_H - v) + (1-p) b (u_S - v) + (b-a) p (1-p) vp.
double dm_hjb_operator(double p, double v, double vp, const ModelParams& m);

}  // namespace swald
