#include "teamgames/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "teamgames/error.hpp"
#include "teamgames/rng.hpp"

namespace teamgames {

void BroConfig::validate() const {
  if (max_sweeps < 1) throw Error(ErrorCategory::kConfig, "max_sweeps must be >= 1");
  if (restarts < 1) throw Error(ErrorCategory::kConfig, "restarts must be >= 1");
  if (!(improvement_tolerance > 0.0)) {
    throw Error(ErrorCategory::kConfig, "improvement_tolerance must be > 0");
  }
  if (!(shared_refinement_tolerance > 0.0)) {
    throw Error(ErrorCategory::kConfig, "shared_refinement_tolerance must be > 0");
  }
  if (shared_grid_points < 2) {
    throw Error(ErrorCategory::kConfig, "shared_grid_points must be >= 2");
  }
  if (exact_mode_threshold < 0) {
    throw Error(ErrorCategory::kConfig, "exact_mode_threshold must be >= 0");
  }
}

JointBestResponse joint_best_response(const TeamGame& game, int team_id,
                                     const JointPolicy& opponent) {
  const int joint_count = game.joint_action_count(team_id);
  JointBestResponse best{0, pure_action_value(game, team_id, 0, opponent)};
  for (int a = 1; a < joint_count; ++a) {
    const double value = pure_action_value(game, team_id, a, opponent);
    if (value > best.value) best = {a, value};
  }
  return best;
}

namespace {

double product_value(const TeamGame& game, int team_id,
                     const std::vector<std::vector<double>>& per_player,
                     const JointPolicy& opponent) {
  return team_value(game, team_id,
                    to_joint(ProductPolicy(team_id, per_player), game), opponent);
}

double shared_value(const TeamGame& game, int team_id, int num_players,
                    const std::vector<double>& probs, const JointPolicy& opponent) {
  std::vector<std::vector<double>> per_player(num_players, probs);
  return product_value(game, team_id, per_player, opponent);
}

// Golden-section maximization on [lo, hi]; assumes the bracket comes from
// a dense grid so the objective is locally unimodal there.
double golden_section_max(double lo, double hi, double tol,
                          const auto& objective) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = objective(x1);
    }
  }
  double mid = 0.5 * (a + b);
  return objective(mid) >= std::max(f1, f2) ? mid : (f1 >= f2 ? x1 : x2);
}

// Enumerates simplex grid points with `steps` subdivisions and keeps the
// best under `objective`. Lexicographically first maximizer wins ties.
void simplex_grid_search(int dim, int steps, const auto& objective,
                         std::vector<double>& best_point, double& best_value) {
  std::vector<int> units(dim, 0);
  std::vector<double> point(dim);
  auto recurse = [&](auto&& self, int index, int remaining) -> void {
    if (index == dim - 1) {
      units[index] = remaining;
      for (int i = 0; i < dim; ++i) point[i] = static_cast<double>(units[i]) / steps;
      const double value = objective(point);
      if (value > best_value) {
        best_value = value;
        best_point = point;
      }
      return;
    }
    for (int u = remaining; u >= 0; --u) {
      units[index] = u;
      self(self, index + 1, remaining - u);
    }
  };
  recurse(recurse, 0, steps);
}

}  // namespace

SharedBestResponse shared_bro(const TeamGame& game, int team_id,
                              const JointPolicy& opponent, const BroConfig& config) {
  config.validate();
  const std::vector<int>& counts = game.action_counts(team_id);
  const int k = counts[0];
  for (int c : counts) {
    if (c != k) {
      throw Error(ErrorCategory::kRepresentation,
                  "shared best response requires equal per-player action counts");
    }
  }
  const int n = static_cast<int>(counts.size());

  if (k == 1) {
    SharedPolicy policy(team_id, {1.0});
    return {policy, shared_value(game, team_id, n, policy.probs(), opponent)};
  }

  if (k == 2) {
    auto objective = [&](double x) {
      return shared_value(game, team_id, n, {x, 1.0 - x}, opponent);
    };
    const int points = config.shared_grid_points;
    double best_x = 0.0, best_value = objective(0.0);
    for (int g = 1; g < points; ++g) {
      const double x = static_cast<double>(g) / (points - 1);
      const double value = objective(x);
      if (value > best_value) {
        best_value = value;
        best_x = x;
      }
    }
    const double step = 1.0 / (points - 1);
    const double lo = std::max(0.0, best_x - step);
    const double hi = std::min(1.0, best_x + step);
    const double refined =
        golden_section_max(lo, hi, config.shared_refinement_tolerance * 1e-3, objective);
    if (objective(refined) >= best_value) {
      best_x = refined;
      best_value = objective(refined);
    }
    SharedPolicy policy(team_id, {best_x, 1.0 - best_x});
    return {policy, best_value};
  }

  // k >= 3: composition grid, resolution capped so the grid stays around
  // 2e5 points, then pairwise mass-transfer ascent.
  auto objective = [&](const std::vector<double>& probs) {
    return shared_value(game, team_id, n, probs, opponent);
  };
  int steps = config.shared_grid_points - 1;
  auto grid_size = [&](int s) {
    double size = 1.0;
    for (int i = 1; i < k; ++i) size *= static_cast<double>(s + i) / i;
    return size;
  };
  while (steps > 1 && grid_size(steps) > 2e5) steps /= 2;

  std::vector<double> best(k, 1.0 / k);
  double best_value = objective(best);
  simplex_grid_search(k, steps, objective, best, best_value);

  for (int round = 0; round < 200; ++round) {
    const double before = best_value;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        // Move mass t from coordinate j to coordinate i.
        auto line = [&](double t) {
          std::vector<double> probs = best;
          probs[i] += t;
          probs[j] -= t;
          return objective(probs);
        };
        const double t =
            golden_section_max(0.0, best[j], config.shared_refinement_tolerance * 1e-3, line);
        const double value = line(t);
        if (value > best_value) {
          best_value = value;
          best[i] += t;
          best[j] -= t;
        }
      }
    }
    if (best_value - before < config.shared_refinement_tolerance) break;
  }
  SharedPolicy policy(team_id, best);
  return {policy, best_value};
}

namespace {

ProductBestResponse exact_product_response(const TeamGame& game, int team_id,
                                           const JointPolicy& opponent) {
  const JointBestResponse jbr = joint_best_response(game, team_id, opponent);
  const std::vector<int> actions = game.decode_joint(team_id, jbr.joint_action);
  return {ProductPolicy::pure(team_id, game.action_counts(team_id), actions), jbr.value};
}

// Best pure action for one player with every other distribution frozen.
// Returns (action, resulting team value).
std::pair<int, double> best_player_action(const TeamGame& game, int team_id, int player,
                                          std::vector<std::vector<double>>& per_player,
                                          const JointPolicy& opponent) {
  const int count = static_cast<int>(per_player[player].size());
  const std::vector<double> saved = per_player[player];
  int best_action = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < count; ++a) {
    std::vector<double> pure(count, 0.0);
    pure[a] = 1.0;
    per_player[player] = std::move(pure);
    const double value = product_value(game, team_id, per_player, opponent);
    if (value > best_value) {
      best_value = value;
      best_action = a;
    }
  }
  per_player[player] = saved;
  return {best_action, best_value};
}

}  // namespace

ProductBestResponse sequential_bro(const TeamGame& game, int team_id,
                                   const JointPolicy& opponent,
                                   const BroConfig& config,
                                   SequentialBroStats* stats) {
  config.validate();
  if (opponent.size() != game.joint_action_count(opponent.team_id())) {
    throw Error(ErrorCategory::kShape, "opponent policy length does not match the game");
  }
  if (stats) *stats = {};

  if (game.joint_action_count(team_id) <= config.exact_mode_threshold) {
    if (stats) stats->used_enumeration = true;
    return exact_product_response(game, team_id, opponent);
  }

  const std::vector<int>& counts = game.action_counts(team_id);
  const int n = static_cast<int>(counts.size());
  SplitMix64 rng(config.permutation_seed);

  ProductBestResponse best{ProductPolicy::uniform(team_id, counts),
                           -std::numeric_limits<double>::infinity()};
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::vector<std::vector<double>> per_player;
    if (restart == 0) {
      for (int c : counts) per_player.emplace_back(c, 1.0 / c);
    } else {
      for (int c : counts) {
        std::vector<double> probs(c, 0.0);
        probs[rng.next_below(static_cast<std::uint64_t>(c))] = 1.0;
        per_player.push_back(std::move(probs));
      }
    }
    if (stats) stats->update_values.emplace_back();

    double value = product_value(game, team_id, per_player, opponent);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      const double sweep_start = value;
      // Fresh random order each sweep.
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
        std::swap(order[i], order[j]);
      }
      for (int player : order) {
        auto [action, new_value] = best_player_action(game, team_id, player, per_player, opponent);
        std::vector<double> pure(counts[player], 0.0);
        pure[action] = 1.0;
        per_player[player] = std::move(pure);
        value = new_value;
        if (stats) stats->update_values.back().push_back(value);
      }
      if (value - sweep_start < config.improvement_tolerance) break;
    }
    if (value > best.value) {
      best = {ProductPolicy(team_id, per_player), value};
    }
  }
  return best;
}

ProductBestResponse independent_bro(const TeamGame& game, int team_id,
                                    const JointPolicy& opponent,
                                    const ProductPolicy& previous_team_policy,
                                    const BroConfig& config) {
  config.validate();
  const std::vector<int>& counts = game.action_counts(team_id);
  std::vector<std::vector<double>> frozen = previous_team_policy.per_player();
  if (static_cast<int>(frozen.size()) != static_cast<int>(counts.size())) {
    throw Error(ErrorCategory::kShape, "previous team policy player count mismatch");
  }
  std::vector<std::vector<double>> updated(frozen.size());
  for (std::size_t player = 0; player < frozen.size(); ++player) {
    auto [action, value] =
        best_player_action(game, team_id, static_cast<int>(player), frozen, opponent);
    (void)value;
    std::vector<double> pure(counts[player], 0.0);
    pure[action] = 1.0;
    updated[player] = std::move(pure);
  }
  ProductPolicy policy(team_id, std::move(updated));
  const double value = team_value(game, team_id, to_joint(policy, game), opponent);
  return {policy, value};
}

}  // namespace teamgames
