#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "swald/equilibrium.hpp"
#include "swald/model.hpp"

namespace swald {

// Counter-based uniform stream: draw n of substream (seed, rep, lane) is a
// fixed hash of its indices, so replications can run in any order (or in
// parallel) without changing a single bit of the output.
struct RngStream {
    std::uint64_t base = 0;
    std::uint64_t ctr = 0;
    static RngStream make(std::uint64_t seed, std::uint64_t rep,
                          std::uint64_t lane);
    double next_unit();  // uniform on [0, 1)
};

struct PathDraw {
    double t = 0.0;        // realized stop time
    bool takes_R = false;  // action taken at the stop
    bool atom0 = false;    // stopped through a time-0 atom
};

// One player's realized stop: the revealing signal (exponential, rate a in
// state H -> R on arrival, rate b in state L -> S on arrival) races the
// strategic stop drawn by inverse CDF from the mixture (atoms first, then
// monotone linear interpolation of rho on its grid).
PathDraw sample_path(const MixedStrategy& s, bool state_H, RngStream& rng,
                     const ModelParams& m);

struct SimulationReport {
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::array<double, 2> mean_payoff{};
    std::array<double, 2> se_payoff{};
    std::array<double, 2> mean_stop_time{};
    double first_mover_freq = 0.0;  // someone collected the unpenalized prize
    double tie0_freq = 0.0;         // both stopped through time-0 atoms
    // player 0's chance of the unpenalized prize given it took R at all,
    // by state, both players past time 0 (the winner's-curse comparison)
    double win_freq_H = 0.0;
    double win_freq_L = 0.0;
    std::uint64_t n_H = 0;      // replications with state H
    std::uint64_t own_R_H = 0;  // denominators behind the win frequencies
    std::uint64_t own_R_L = 0;
    std::uint64_t interior_ties = 0;  // exact float ties at t > 0 (coin-ordered)
    // player 0's empirical stop CDFs conditional on the state
    std::vector<double> grid;
    std::vector<double> emp_F_H;
    std::vector<double> emp_F_L;
    std::vector<double> emp_G_L;
};

SimulationReport simulate(const MixedStrategy& s0, const MixedStrategy& s1,
                          double p0, std::uint64_t reps, std::uint64_t seed,
                          const ModelParams& m, double grid_step = 0.5);

SimulationReport simulate(const EquilibriumProfile& prof, std::uint64_t reps,
                          std::uint64_t seed, const ModelParams& m,
                          double grid_step = 0.5);

}  // namespace swald
