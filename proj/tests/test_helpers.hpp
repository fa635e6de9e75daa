#pragma once

// Shared helpers for the unit suites: seeded random policies and small
// brute-force oracles independent of the library's evaluation code.

#include <cmath>
#include <vector>

#include "teamgames/game.hpp"
#include "teamgames/policy.hpp"
#include "teamgames/rng.hpp"

namespace testutil {

inline std::vector<double> random_simplex(teamgames::SplitMix64& rng, int n) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    x = -std::log(1.0 - rng.next_double());
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

inline teamgames::JointPolicy random_joint(teamgames::SplitMix64& rng, int team_id,
                                           int size) {
  return {team_id, random_simplex(rng, size)};
}

inline teamgames::ProductPolicy random_product(teamgames::SplitMix64& rng, int team_id,
                                               const std::vector<int>& counts) {
  std::vector<std::vector<double>> per;
  per.reserve(counts.size());
  for (int c : counts) per.push_back(random_simplex(rng, c));
  return {team_id, std::move(per)};
}

// Outer product of per-player distributions, player 1 most significant.
inline std::vector<double> outer_product(const std::vector<std::vector<double>>& per) {
  std::vector<double> joint{1.0};
  for (const auto& p : per) {
    std::vector<double> next;
    next.reserve(joint.size() * p.size());
    for (double a : joint)
      for (double b : p) next.push_back(a * b);
    joint = std::move(next);
  }
  return joint;
}

// Direct double loop over the payoff tensor.
inline double oracle_expected(const teamgames::TeamGame& game,
                              const std::vector<double>& p1,
                              const std::vector<double>& p2) {
  double total = 0.0;
  for (int i = 0; i < game.joint_action_count(1); ++i)
    for (int j = 0; j < game.joint_action_count(2); ++j)
      total += p1[i] * game.payoff(i, j) * p2[j];
  return total;
}

// Expected payoff, from `team_id`'s perspective, when the listed players
// play fixed actions and the rest sample from `per` (independently), vs a
// fixed opponent joint distribution. Enumerates every own joint action.
inline double oracle_conditioned_value(const teamgames::TeamGame& game, int team_id,
                                       const std::vector<std::vector<double>>& per,
                                       const std::vector<int>& fixed_players,
                                       const std::vector<int>& fixed_actions,
                                       const std::vector<double>& opp_joint) {
  const int n = game.num_players(team_id);
  std::vector<int> forced(n, -1);
  for (std::size_t k = 0; k < fixed_players.size(); ++k)
    forced[fixed_players[k]] = fixed_actions[k];
  double total = 0.0;
  const int count = game.joint_action_count(team_id);
  for (int joint = 0; joint < count; ++joint) {
    const std::vector<int> actions = game.decode_joint(team_id, joint);
    double prob = 1.0;
    for (int p = 0; p < n && prob > 0.0; ++p) {
      if (forced[p] >= 0)
        prob *= actions[p] == forced[p] ? 1.0 : 0.0;
      else
        prob *= per[p][actions[p]];
    }
    if (prob == 0.0) continue;
    double q = 0.0;
    if (team_id == 1) {
      for (int j = 0; j < game.joint_action_count(2); ++j)
        q += game.payoff(joint, j) * opp_joint[j];
    } else {
      for (int i = 0; i < game.joint_action_count(1); ++i)
        q -= game.payoff(i, joint) * opp_joint[i];
    }
    total += prob * q;
  }
  return total;
}

}  // namespace testutil
