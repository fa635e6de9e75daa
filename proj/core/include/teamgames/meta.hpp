#pragma once

#include <vector>

#include "teamgames/game.hpp"
#include "teamgames/policy.hpp"

namespace teamgames {

// Expected payoffs between all population pairs. Entry (i, j) is team 1's
// exact expected payoff of pop1[i] against pop2[j]. Rows and columns are
// identified by population index; appending a policy recomputes only the
// new row or column.
class RestrictedPayoffMatrix {
 public:
  RestrictedPayoffMatrix() = default;

  int rows() const { return static_cast<int>(matrix_.size()); }
  int cols() const { return rows() == 0 ? 0 : static_cast<int>(matrix_[0].size()); }
  double at(int i, int j) const { return matrix_[i][j]; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }

  const std::vector<JointPolicy>& team1_entries() const { return pop1_joint_; }
  const std::vector<JointPolicy>& team2_entries() const { return pop2_joint_; }

  void append_team1(const TeamGame& game, const TeamPolicy& policy);
  void append_team2(const TeamGame& game, const TeamPolicy& policy);

 private:
  std::vector<JointPolicy> pop1_joint_;
  std::vector<JointPolicy> pop2_joint_;
  std::vector<std::vector<double>> matrix_;
};

RestrictedPayoffMatrix build_restricted_matrix(const TeamGame& game,
                                               const std::vector<TeamPolicy>& pop1,
                                               const std::vector<TeamPolicy>& pop2);

// A mixture over a team's population.
class MetaPolicy {
 public:
  MetaPolicy(int team_id, std::vector<double> weights);

  int team_id() const { return team_id_; }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }

 private:
  int team_id_;
  std::vector<double> weights_;
};

struct MetaSolution {
  MetaPolicy sigma1;
  MetaPolicy sigma2;
  double value;
};

// Plain matrix form used by both the restricted meta-game and the
// full-game ground-truth oracle.
struct ZeroSumSolution {
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double value;
};

// Exact maxmin/minmax of the zero-sum matrix game (payoffs to the row
// player) via a self-contained dense simplex with Bland's rule. The
// matrix is normalized by its largest magnitude first, so positive
// scalings take the same pivot path and return the same supports.
// Enforces a duality-gap certificate of 1e-9 and an epsilon-best-response
// certificate of 1e-8; a violation throws a numeric error.
ZeroSumSolution solve_zero_sum_matrix(const std::vector<std::vector<double>>& payoff);

MetaSolution solve_zero_sum(const RestrictedPayoffMatrix& restricted);

}  // namespace teamgames
