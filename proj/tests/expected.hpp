// Shared test support: frozen reference values (oracle/expected.json) and
// the three parameter sets the references were computed on.
#pragma once

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "swald/model.hpp"

inline const nlohmann::json& expected() {
  static const nlohmann::json j = [] {
    std::ifstream in(EXPECTED_JSON_PATH);
    if (!in) throw std::runtime_error("cannot open expected.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

// Fetch a double at a nested path like {"fig1","p_star"}.
inline double exp_num(std::initializer_list<const char*> path) {
  const nlohmann::json* j = &expected();
  for (const char* key : path) j = &j->at(key);
  return j->get<double>();
}

// Gentle competition, the workhorse set (library defaults).
inline swald::ModelParams fig1_params() {
  return swald::validate_params({});
}

// Gentle competition with small penalties and cheap information.
inline swald::ModelParams setq_params() {
  swald::ModelParams m;
  m.dbar_H = m.dbar_L = 0.2;
  m.dund_H = m.dund_L = 0.1;
  m.c = 0.01;
  return swald::validate_params(m);
}

// Intense competition (u_H - dbar_H < u_S).
inline swald::ModelParams a3_params() {
  swald::ModelParams m;
  m.u_H = 0.5;
  m.dbar_H = 1.0;
  m.dbar_L = 0.7;
  m.dund_H = 0.3;
  m.dund_L = 0.4;
  m.c = 0.01;
  return swald::validate_params(m);
}
