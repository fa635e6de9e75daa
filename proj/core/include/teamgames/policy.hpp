#pragma once

#include <span>
#include <variant>
#include <vector>

#include "teamgames/game.hpp"

namespace teamgames {

// Validates a probability vector: entries >= 0 and sum within 1e-9 of 1.
// Vectors inside tolerance are renormalized; anything else is rejected
// with a representation error. `what` names the vector in error messages.
std::vector<double> checked_simplex(std::vector<double> probs, const char* what);

// A fully correlated team strategy: one distribution over the team's joint
// actions.
class JointPolicy {
 public:
  JointPolicy(int team_id, std::vector<double> probs);
  static JointPolicy pure(int team_id, int joint_action_count, int joint_action);

  int team_id() const { return team_id_; }
  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }

 private:
  int team_id_;
  std::vector<double> probs_;
};

// Independent per-player mixed strategies (the heterogeneous form).
class ProductPolicy {
 public:
  ProductPolicy(int team_id, std::vector<std::vector<double>> per_player_probs);
  static ProductPolicy uniform(int team_id, std::span<const int> action_counts);
  static ProductPolicy pure(int team_id, std::span<const int> action_counts,
                            std::span<const int> actions);

  int team_id() const { return team_id_; }
  const std::vector<std::vector<double>>& per_player() const { return per_player_; }
  int num_players() const { return static_cast<int>(per_player_.size()); }

 private:
  int team_id_;
  std::vector<std::vector<double>> per_player_;
};

// One distribution applied to every teammate by action index.
class SharedPolicy {
 public:
  SharedPolicy(int team_id, std::vector<double> probs);

  int team_id() const { return team_id_; }
  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }

 private:
  int team_id_;
  std::vector<double> probs_;
};

using TeamPolicy = std::variant<JointPolicy, ProductPolicy, SharedPolicy>;

int team_of(const TeamPolicy& policy);

// Flattens any representation to the induced distribution over the team's
// joint actions. SharedPolicy requires every teammate to have the same
// action count (indices map by position, not by label).
JointPolicy to_joint(const TeamPolicy& policy, const TeamGame& game);

// Team 1's expected reward under the product of the two joint
// distributions. Team 2's expected reward is the negation.
double expected_payoff(const TeamGame& game, const JointPolicy& p1,
                       const JointPolicy& p2);

// Expected reward, from `team_id`'s own perspective, of `team_joint`
// against `opponent` (both already joint-form, on opposite teams).
double team_value(const TeamGame& game, int team_id, const JointPolicy& team_joint,
                  const JointPolicy& opponent);

// Expected reward, from `team_id`'s perspective, of the pure joint action
// against the opponent's joint distribution (the single-state Q function).
double pure_action_value(const TeamGame& game, int team_id, int joint_action,
                         const JointPolicy& opponent);

// Q(joint_action) - V(team_policy), both against the fixed opponent.
double team_advantage(const TeamGame& game, const JointPolicy& team_policy,
                      const JointPolicy& opponent, int joint_action);

// Multi-agent advantage: listed agents (ordered, distinct) play their fixed
// actions while the unlisted teammates sample from `base_policy`; the
// opponent plays `opponent`. Returns the expected advantage relative to
// everyone following `base_policy`.
double multiagent_advantage(const TeamGame& game, const ProductPolicy& base_policy,
                            const JointPolicy& opponent,
                            std::span<const int> agents,
                            std::span<const int> fixed_actions);

}  // namespace teamgames
