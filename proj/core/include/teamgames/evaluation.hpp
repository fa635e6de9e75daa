#pragma once

#include <array>

#include "teamgames/game.hpp"
#include "teamgames/policy.hpp"
#include "teamgames/trace.hpp"

namespace teamgames {

// e(p1, p2) = R2(p1, BR(p1)) + R1(BR(p2), p2), both best responses taken
// exactly over pure joint actions. Zero exactly at a TMECor; never more
// than rounding below zero.
double exploitability(const TeamGame& game, const JointPolicy& p1,
                      const JointPolicy& p2);

struct FullGameSolution {
  JointPolicy p1;
  JointPolicy p2;
  double value;
};

// Ground-truth TMECor oracle: solves the full payoff tensor as a
// two-player zero-sum game. Guarded to joint-action products of at most
// one million.
FullGameSolution solve_full_tmecor(const TeamGame& game);

// Maps a Team-RPS-shaped joint policy (2 players x 2 actions per team) to
// its (Rock, Paper, Scissors) decision distribution.
std::array<double, 3> project_team_rps(const JointPolicy& p);

enum class TrajectoryProjection { kRaw, kTeamRps };

// Flattens a trace's recorded trajectories into ordered rows
// (iteration, team, coordinates...). Raw mode is lossless.
Table export_trajectory(const RunTrace& trace, TrajectoryProjection projection);

}  // namespace teamgames
