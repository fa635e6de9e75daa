#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "teamgames/game.hpp"
#include "teamgames/policy.hpp"

namespace teamgames {

struct BroConfig {
  int max_sweeps = 50;
  int restarts = 16;
  double improvement_tolerance = 1e-10;
  std::uint64_t permutation_seed = 0;
  int shared_grid_points = 1001;
  double shared_refinement_tolerance = 1e-9;
  // Joint-action count at or below which sequential_bro switches to exact
  // enumeration. Set to 0 to force coordinate ascent.
  int exact_mode_threshold = 4096;

  void validate() const;
};

struct JointBestResponse {
  int joint_action;
  double value;  // from the responding team's own perspective
};

struct SharedBestResponse {
  SharedPolicy policy;
  double value;
};

struct ProductBestResponse {
  ProductPolicy policy;
  double value;
};

// Objective values observed during sequential_bro, one inner vector per
// restart, one entry per per-player update. Used to check the monotone
// improvement property.
struct SequentialBroStats {
  std::vector<std::vector<double>> update_values;
  bool used_enumeration = false;
};

// Exact best response over the team's pure joint actions. Ties break to
// the lowest joint index.
JointBestResponse joint_best_response(const TeamGame& game, int team_id,
                                     const JointPolicy& opponent);

// Best shared policy (all teammates forced onto one distribution) against
// a fixed opponent: dense simplex grid followed by local ascent. Hard
// error when teammates have unequal action counts.
SharedBestResponse shared_bro(const TeamGame& game, int team_id,
                              const JointPolicy& opponent, const BroConfig& config);

// Sequential heterogeneous best response: multi-restart coordinate ascent
// where teammates update in a freshly drawn random order each sweep, each
// replacing its distribution with an exact pure best response conditioned
// on the teammates already updated. Falls back to exact enumeration when
// the team's joint-action count is at most config.exact_mode_threshold.
ProductBestResponse sequential_bro(const TeamGame& game, int team_id,
                                   const JointPolicy& opponent,
                                   const BroConfig& config,
                                   SequentialBroStats* stats = nullptr);

// One simultaneous round: every player best-responds to the opponent with
// teammates frozen at previous_team_policy. No optimality guarantee.
ProductBestResponse independent_bro(const TeamGame& game, int team_id,
                                    const JointPolicy& opponent,
                                    const ProductPolicy& previous_team_policy,
                                    const BroConfig& config);

}  // namespace teamgames
