#include "teamgames/policy.hpp"

#include <cmath>
#include <cstddef>
#include <set>
#include <string>

#include "teamgames/error.hpp"

namespace teamgames {

namespace {

constexpr double kSimplexTolerance = 1e-9;

void check_team_id(int team_id) {
  if (team_id != 1 && team_id != 2) {
    throw Error(ErrorCategory::kShape, "team_id must be 1 or 2");
  }
}

}  // namespace

std::vector<double> checked_simplex(std::vector<double> probs, const char* what) {
  if (probs.empty()) {
    throw Error(ErrorCategory::kRepresentation, std::string(what) + " is empty");
  }
  double sum = 0.0;
  for (double& p : probs) {
    if (!std::isfinite(p) || p < -kSimplexTolerance) {
      throw Error(ErrorCategory::kRepresentation,
                  std::string(what) + " has a negative or non-finite entry");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCategory::kRepresentation,
                std::string(what) + " does not sum to 1 (sum = " + std::to_string(sum) + ")");
  }
  for (double& p : probs) p /= sum;
  return probs;
}

JointPolicy::JointPolicy(int team_id, std::vector<double> probs)
    : team_id_(team_id), probs_(checked_simplex(std::move(probs), "joint policy")) {
  check_team_id(team_id);
}

JointPolicy JointPolicy::pure(int team_id, int joint_action_count, int joint_action) {
  if (joint_action < 0 || joint_action >= joint_action_count) {
    throw Error(ErrorCategory::kShape, "pure joint action out of range");
  }
  std::vector<double> probs(joint_action_count, 0.0);
  probs[joint_action] = 1.0;
  return JointPolicy(team_id, std::move(probs));
}

ProductPolicy::ProductPolicy(int team_id, std::vector<std::vector<double>> per_player_probs)
    : team_id_(team_id) {
  check_team_id(team_id);
  if (per_player_probs.empty()) {
    throw Error(ErrorCategory::kRepresentation, "product policy has no players");
  }
  per_player_.reserve(per_player_probs.size());
  for (auto& probs : per_player_probs) {
    per_player_.push_back(checked_simplex(std::move(probs), "product policy entry"));
  }
}

ProductPolicy ProductPolicy::uniform(int team_id, std::span<const int> action_counts) {
  std::vector<std::vector<double>> per_player;
  per_player.reserve(action_counts.size());
  for (int c : action_counts) {
    per_player.emplace_back(c, 1.0 / c);
  }
  return ProductPolicy(team_id, std::move(per_player));
}

ProductPolicy ProductPolicy::pure(int team_id, std::span<const int> action_counts,
                                  std::span<const int> actions) {
  if (actions.size() != action_counts.size()) {
    throw Error(ErrorCategory::kShape, "pure product policy arity mismatch");
  }
  std::vector<std::vector<double>> per_player;
  per_player.reserve(action_counts.size());
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= action_counts[i]) {
      throw Error(ErrorCategory::kShape, "pure action out of range");
    }
    std::vector<double> probs(action_counts[i], 0.0);
    probs[actions[i]] = 1.0;
    per_player.push_back(std::move(probs));
  }
  return ProductPolicy(team_id, std::move(per_player));
}

SharedPolicy::SharedPolicy(int team_id, std::vector<double> probs)
    : team_id_(team_id), probs_(checked_simplex(std::move(probs), "shared policy")) {
  check_team_id(team_id);
}

int team_of(const TeamPolicy& policy) {
  return std::visit([](const auto& p) { return p.team_id(); }, policy);
}

namespace {

JointPolicy product_to_joint(int team_id,
                             const std::vector<std::vector<double>>& per_player,
                             const TeamGame& game) {
  const std::vector<int>& counts = game.action_counts(team_id);
  if (per_player.size() != counts.size()) {
    throw Error(ErrorCategory::kRepresentation,
                "product policy player count does not match the game");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (static_cast<int>(per_player[i].size()) != counts[i]) {
      throw Error(ErrorCategory::kRepresentation,
                  "product policy action count does not match the game");
    }
  }
  const int joint_count = game.joint_action_count(team_id);
  std::vector<double> probs(joint_count);
  for (int joint = 0; joint < joint_count; ++joint) {
    // Mixed-radix decode inline; player 1 most significant.
    double p = 1.0;
    int rest = joint;
    for (int i = static_cast<int>(counts.size()) - 1; i >= 0; --i) {
      p *= per_player[i][rest % counts[i]];
      rest /= counts[i];
    }
    probs[joint] = p;
  }
  return JointPolicy(team_id, std::move(probs));
}

}  // namespace

JointPolicy to_joint(const TeamPolicy& policy, const TeamGame& game) {
  if (const auto* joint = std::get_if<JointPolicy>(&policy)) {
    if (joint->size() != game.joint_action_count(joint->team_id())) {
      throw Error(ErrorCategory::kShape, "joint policy length does not match the game");
    }
    return *joint;
  }
  if (const auto* product = std::get_if<ProductPolicy>(&policy)) {
    return product_to_joint(product->team_id(), product->per_player(), game);
  }
  const auto& shared = std::get<SharedPolicy>(policy);
  const std::vector<int>& counts = game.action_counts(shared.team_id());
  for (int c : counts) {
    if (c != shared.size()) {
      throw Error(ErrorCategory::kRepresentation,
                  "shared policy requires every teammate to have " +
                      std::to_string(shared.size()) + " actions");
    }
  }
  std::vector<std::vector<double>> per_player(counts.size(), shared.probs());
  return product_to_joint(shared.team_id(), per_player, game);
}

double expected_payoff(const TeamGame& game, const JointPolicy& p1,
                       const JointPolicy& p2) {
  if (p1.team_id() != 1 || p2.team_id() != 2) {
    throw Error(ErrorCategory::kShape, "expected_payoff wants (team 1, team 2) policies");
  }
  if (p1.size() != game.joint_action_count(1) || p2.size() != game.joint_action_count(2)) {
    throw Error(ErrorCategory::kShape, "policy length does not match the game");
  }
  double total = 0.0;
  for (int i = 0; i < p1.size(); ++i) {
    if (p1.probs()[i] == 0.0) continue;
    double row_value = 0.0;
    std::span<const double> row = game.row(i);
    for (int j = 0; j < p2.size(); ++j) row_value += row[j] * p2.probs()[j];
    total += p1.probs()[i] * row_value;
  }
  return total;
}

double team_value(const TeamGame& game, int team_id, const JointPolicy& team_joint,
                  const JointPolicy& opponent) {
  if (team_id == 1) return expected_payoff(game, team_joint, opponent);
  if (team_id == 2) return -expected_payoff(game, opponent, team_joint);
  throw Error(ErrorCategory::kShape, "team_id must be 1 or 2");
}

double pure_action_value(const TeamGame& game, int team_id, int joint_action,
                         const JointPolicy& opponent) {
  if (joint_action < 0 || joint_action >= game.joint_action_count(team_id)) {
    throw Error(ErrorCategory::kShape, "joint action out of range");
  }
  if (opponent.team_id() == team_id) {
    throw Error(ErrorCategory::kShape, "opponent policy belongs to the same team");
  }
  if (opponent.size() != game.joint_action_count(opponent.team_id())) {
    throw Error(ErrorCategory::kShape, "opponent policy length does not match the game");
  }
  double value = 0.0;
  if (team_id == 1) {
    std::span<const double> row = game.row(joint_action);
    for (int j = 0; j < opponent.size(); ++j) value += row[j] * opponent.probs()[j];
  } else {
    for (int i = 0; i < opponent.size(); ++i) {
      value -= game.payoff(i, joint_action) * opponent.probs()[i];
    }
  }
  return value;
}

double team_advantage(const TeamGame& game, const JointPolicy& team_policy,
                      const JointPolicy& opponent, int joint_action) {
  const int team_id = team_policy.team_id();
  return pure_action_value(game, team_id, joint_action, opponent) -
         team_value(game, team_id, team_policy, opponent);
}

double multiagent_advantage(const TeamGame& game, const ProductPolicy& base_policy,
                            const JointPolicy& opponent,
                            std::span<const int> agents,
                            std::span<const int> fixed_actions) {
  const int team_id = base_policy.team_id();
  const std::vector<int>& counts = game.action_counts(team_id);
  if (agents.size() != fixed_actions.size()) {
    throw Error(ErrorCategory::kShape, "one fixed action per listed agent required");
  }
  std::set<int> seen;
  std::vector<std::vector<double>> per_player = base_policy.per_player();
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const int agent = agents[k];
    if (agent < 0 || agent >= static_cast<int>(counts.size())) {
      throw Error(ErrorCategory::kShape, "agent index out of range");
    }
    if (!seen.insert(agent).second) {
      throw Error(ErrorCategory::kShape, "duplicate agent in subset");
    }
    if (fixed_actions[k] < 0 || fixed_actions[k] >= counts[agent]) {
      throw Error(ErrorCategory::kShape, "fixed action out of range");
    }
    std::vector<double> pure(counts[agent], 0.0);
    pure[fixed_actions[k]] = 1.0;
    per_player[agent] = std::move(pure);
  }
  const JointPolicy base_joint = to_joint(base_policy, game);
  const JointPolicy fixed_joint =
      to_joint(ProductPolicy(team_id, std::move(per_player)), game);
  return team_value(game, team_id, fixed_joint, opponent) -
         team_value(game, team_id, base_joint, opponent);
}

}  // namespace teamgames
