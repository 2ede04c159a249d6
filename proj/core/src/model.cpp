#include "swald/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace swald {

ModelParams validate_params(ModelParams raw) {
    auto fail = [](const std::string& msg) { throw InvalidParams(msg); };

    if (!(raw.a > 0.0)) fail("signal rates: need a > 0");
    if (!(raw.b > raw.a)) fail("signal rates: need b > a");
    if (!(raw.c > 0.0)) fail("flow cost: need c > 0");
    if (raw.N < 2) fail("player count: need N >= 2");
    if (!(raw.dbar_H > raw.dund_H) || !(raw.dbar_L > raw.dund_L) ||
        !(raw.dund_H > 0.0) || !(raw.dund_L > 0.0))
        fail("Assumption 1 violated: need dbar > dund > 0 in both states");

    const double second_H = raw.u_H - raw.dbar_H;
    const bool gentle = raw.u_L < raw.u_S && raw.u_S < second_H;
    const bool intense = raw.u_L < second_H && second_H < raw.u_S;
    if (gentle == intense) {
        std::ostringstream os;
        os << "competition regime: need exactly one of u_L < u_S < u_H - dbar_H "
              "or u_L < u_H - dbar_H < u_S (u_L = "
           << raw.u_L << ", u_H - dbar_H = " << second_H << ", u_S = " << raw.u_S
           << ")";
        fail(os.str());
    }
    raw.regime = gentle ? CompetitionRegime::Gentle : CompetitionRegime::Intense;
    return raw;
}

double lr_of_p(double p) {
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    return p / (1.0 - p);
}

double p_of_lr(double L) {
    if (std::isinf(L)) return 1.0;
    return L / (1.0 + L);
}

double lr_at(double L0, double t, const ModelParams& m) {
    return L0 * std::exp((m.b - m.a) * t);
}

double belief_at(double p0, double t, const ModelParams& m) {
    if (p0 <= 0.0) return 0.0;
    if (p0 >= 1.0) return 1.0;
    return p_of_lr(lr_at(lr_of_p(p0), t, m));
}

double no_signal_prob(double p0, double t, const ModelParams& m) {
    return p0 * std::exp(-m.a * t) + (1.0 - p0) * std::exp(-m.b * t);
}

double r_payoff(double p, double F_H, double F_L, const ModelParams& m) {
    return p * (m.u_H - F_H * m.dbar_H) + (1.0 - p) * (m.u_L - F_L * m.dbar_L);
}

}  // namespace swald
