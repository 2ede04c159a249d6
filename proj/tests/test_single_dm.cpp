#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "expected.hpp"
#include "swald/errors.hpp"
#include "swald/numerics.hpp"
#include "swald/single_dm.hpp"

using namespace swald;

namespace {
void check_close(double got, double want, double tol) {
  CHECK_MESSAGE(std::abs(got - want) <= tol,
                "got " << got << ", want " << want << ", tol " << tol);
}
}  // namespace

TEST_CASE("solitary boundaries on the three reference sets") {
  struct Row {
    const char* key;
    ModelParams m;
  };
  const Row rows[] = {{"fig1", fig1_params()},
                      {"setQ", setq_params()},
                      {"a3", a3_params()}};
  for (const auto& r : rows) {
    CAPTURE(r.key);
    const auto s = dm_cutoffs(r.m);
    check_close(s.c_bar, exp_num({r.key, "c_bar"}), 1e-14);
    check_close(s.L_bar, exp_num({r.key, "L_bar"}), 1e-10);
    check_close(s.p_bar, exp_num({r.key, "p_bar"}), 1e-12);
    check_close(s.L_und, exp_num({r.key, "L_lower"}), 1e-11);
    check_close(s.p_und, exp_num({r.key, "p_lower"}), 1e-11);
    check_close(s.K, exp_num({r.key, "K"}), std::abs(s.K) * 1e-10);
    CHECK(0.0 < s.p_und);
    CHECK(s.p_und < s.p_bar);
    CHECK(s.p_bar < 1.0);
  }
}

TEST_CASE("no learning region once information is too expensive") {
  ModelParams m = fig1_params();
  m.c = 0.4;  // exactly the threshold for this set
  try {
    dm_cutoffs(m);
    FAIL("expected NoLearningRegion");
  } catch (const NoLearningRegion& e) {
    check_close(e.c_bar, 0.4, 1e-14);
    CHECK(e.kind() == "NoLearningRegion");
  }
}

TEST_CASE("value function matches the reference curve") {
  const auto m = fig1_params();
  const auto s = dm_cutoffs(m);
  const auto& priors = expected().at("fig1").at("dm_priors");
  const auto& values = expected().at("fig1").at("dm_values");
  const auto& quad = expected().at("fig1").at("dm_quad_values");
  for (std::size_t i = 0; i < priors.size(); ++i) {
    const double p = priors[i].get<double>();
    const double v = dm_value(p, s, m);
    check_close(v, values[i].get<double>(), 1e-10);
    // the independent quadrature agrees with the closed form
    check_close(v, quad[i].get<double>(), 1e-9);
  }
  check_close(dm_value(0.5, s, m), exp_num({"fig1", "dm_value_p05"}), 1e-12);
}

TEST_CASE("value pastes smoothly and stays convex") {
  for (const auto& m : {fig1_params(), setq_params(), a3_params()}) {
    const auto s = dm_cutoffs(m);
    const auto r = smooth_pasting_residuals(s, m);
    CHECK(r.value_upper < 1e-12);
    CHECK(r.slope_upper < 1e-12);
    CHECK(r.value_lower < 1e-10);
    CHECK(r.convexity_min > -1e-7);
    CHECK(r.supersolution_max < 1e-9);
    CHECK(r.subdifferential_max < 1e-9);
  }
}

TEST_CASE("stationary operator vanishes inside the learning region") {
  const auto m = fig1_params();
  const auto s = dm_cutoffs(m);
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double v = dm_value(p, s, m);
    const double vp =
        fd_derivative([&](double x) { return dm_value(x, s, m); }, p);
    check_close(dm_hjb_operator(p, v, vp, m), 0.0, 1e-6);
  }
}

TEST_CASE("value brackets: safe floor, immediate-R ceiling behavior") {
  const auto m = fig1_params();
  const auto s = dm_cutoffs(m);
  for (double p = 0.01; p < 1.0; p += 0.01) {
    const double v = dm_value(p, s, m);
    CHECK(v >= m.u_S - 1e-12);
    CHECK(v >= p * m.u_H + (1.0 - p) * m.u_L - 1e-12);
    CHECK(v <= p * m.u_H + (1.0 - p) * m.u_S + 1e-12);  // full-information cap
  }
}

TEST_CASE("policy regions follow the boundaries") {
  const auto m = fig1_params();
  const auto s = dm_cutoffs(m);
  CHECK(dm_policy(s.p_und / 2.0, s) == DmPolicy::TakeS);
  CHECK(dm_policy(0.5, s) == DmPolicy::Learn);
  CHECK(dm_policy((1.0 + s.p_bar) / 2.0, s) == DmPolicy::TakeR);
  CHECK(dm_policy(s.p_und, s) == DmPolicy::TakeS);
  CHECK(dm_policy(s.p_bar, s) == DmPolicy::TakeR);
}

TEST_CASE("lower boundary vanishes linearly with the flow cost") {
  ModelParams base = fig1_params();
  const auto& cs = expected().at("vanishing_c").at("c");
  const auto& ps = expected().at("vanishing_c").at("p_lower");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    ModelParams m = base;
    m.c = cs[i].get<double>();
    const auto s = dm_cutoffs(m);
    check_close(s.p_und, ps[i].get<double>(), 1e-11);
  }
}
