#include "teamgames/meta.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "teamgames/error.hpp"

namespace teamgames {

void RestrictedPayoffMatrix::append_team1(const TeamGame& game, const TeamPolicy& policy) {
  if (team_of(policy) != 1) {
    throw Error(ErrorCategory::kShape, "expected a team 1 policy for a new row");
  }
  JointPolicy joint = to_joint(policy, game);
  std::vector<double> row(pop2_joint_.size());
  for (std::size_t j = 0; j < pop2_joint_.size(); ++j) {
    row[j] = expected_payoff(game, joint, pop2_joint_[j]);
  }
  pop1_joint_.push_back(std::move(joint));
  matrix_.push_back(std::move(row));
}

void RestrictedPayoffMatrix::append_team2(const TeamGame& game, const TeamPolicy& policy) {
  if (team_of(policy) != 2) {
    throw Error(ErrorCategory::kShape, "expected a team 2 policy for a new column");
  }
  JointPolicy joint = to_joint(policy, game);
  for (std::size_t i = 0; i < pop1_joint_.size(); ++i) {
    matrix_[i].push_back(expected_payoff(game, pop1_joint_[i], joint));
  }
  pop2_joint_.push_back(std::move(joint));
}

RestrictedPayoffMatrix build_restricted_matrix(const TeamGame& game,
                                               const std::vector<TeamPolicy>& pop1,
                                               const std::vector<TeamPolicy>& pop2) {
  if (pop1.empty() || pop2.empty()) {
    throw Error(ErrorCategory::kShape, "populations must be nonempty");
  }
  RestrictedPayoffMatrix restricted;
  for (const TeamPolicy& p : pop2) restricted.append_team2(game, p);
  for (const TeamPolicy& p : pop1) restricted.append_team1(game, p);
  return restricted;
}

MetaPolicy::MetaPolicy(int team_id, std::vector<double> weights)
    : team_id_(team_id), weights_(checked_simplex(std::move(weights), "meta policy")) {
  if (team_id != 1 && team_id != 2) {
    throw Error(ErrorCategory::kShape, "team_id must be 1 or 2");
  }
}

namespace {

constexpr double kPivotEps = 1e-12;

// Primal simplex on: max sum(y) s.t. A y <= 1, y >= 0, where A > 0.
// Returns the optimal y and the duals x (one per constraint). Bland's
// rule throughout, so the pivot path is deterministic.
void solve_positive_game_lp(const std::vector<std::vector<double>>& a, int m, int n,
                            std::vector<double>& y, std::vector<double>& x) {
  const int total = n + m;  // structural + slack variables
  std::vector<std::vector<double>> tableau(m, std::vector<double>(total + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tableau[i][j] = a[i][j];
    tableau[i][n + i] = 1.0;
    tableau[i][total] = 1.0;
  }
  std::vector<double> reduced(total, 0.0);
  for (int j = 0; j < n; ++j) reduced[j] = 1.0;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    int pivot_col = -1;
    for (int j = 0; j < total; ++j) {
      if (reduced[j] > kPivotEps) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col < 0) break;

    int pivot_row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (tableau[i][pivot_col] > kPivotEps) {
        const double ratio = tableau[i][total] / tableau[i][pivot_col];
        if (ratio < best_ratio - kPivotEps ||
            (ratio < best_ratio + kPivotEps && pivot_row >= 0 &&
             basis[i] < basis[pivot_row])) {
          best_ratio = ratio;
          pivot_row = i;
        }
      }
    }
    if (pivot_row < 0) {
      throw Error(ErrorCategory::kNumeric, "zero-sum LP is unbounded");
    }

    const double pivot = tableau[pivot_row][pivot_col];
    for (double& v : tableau[pivot_row]) v /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == pivot_row) continue;
      const double factor = tableau[i][pivot_col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= total; ++j) tableau[i][j] -= factor * tableau[pivot_row][j];
    }
    const double obj_factor = reduced[pivot_col];
    for (int j = 0; j < total; ++j) reduced[j] -= obj_factor * tableau[pivot_row][j];
    basis[pivot_row] = pivot_col;
  }

  y.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) y[basis[i]] = tableau[i][total];
  }
  x.assign(m, 0.0);
  for (int i = 0; i < m; ++i) x[i] = std::max(0.0, -reduced[n + i]);
}

std::vector<double> normalized(std::vector<double> v) {
  double sum = 0.0;
  for (double& e : v) {
    if (e < 0.0) e = 0.0;
    sum += e;
  }
  if (sum <= 0.0) {
    throw Error(ErrorCategory::kNumeric, "degenerate LP strategy");
  }
  for (double& e : v) e /= sum;
  return v;
}

}  // namespace

ZeroSumSolution solve_zero_sum_matrix(const std::vector<std::vector<double>>& payoff) {
  const int m = static_cast<int>(payoff.size());
  if (m == 0) throw Error(ErrorCategory::kShape, "empty payoff matrix");
  const int n = static_cast<int>(payoff[0].size());
  if (n == 0) throw Error(ErrorCategory::kShape, "empty payoff matrix");
  double magnitude = 0.0;
  for (const auto& row : payoff) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCategory::kShape, "ragged payoff matrix");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCategory::kNumeric, "payoff matrix has a non-finite entry");
      }
      magnitude = std::max(magnitude, std::abs(v));
    }
  }
  if (magnitude == 0.0) {
    return {std::vector<double>(m, 1.0 / m), std::vector<double>(n, 1.0 / n), 0.0};
  }

  // Normalize so positive scalings of the input solve the identical LP,
  // then shift so every entry is >= 1.
  double min_entry = std::numeric_limits<double>::infinity();
  for (const auto& row : payoff) {
    for (double v : row) min_entry = std::min(min_entry, v / magnitude);
  }
  const double shift = 1.0 - min_entry;
  std::vector<std::vector<double>> shifted(m, std::vector<double>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) shifted[i][j] = payoff[i][j] / magnitude + shift;
  }

  std::vector<double> y, x;
  solve_positive_game_lp(shifted, m, n, y, x);
  double y_sum = 0.0;
  for (double v : y) y_sum += v;
  if (y_sum <= 0.0) {
    throw Error(ErrorCategory::kNumeric, "zero-sum LP returned a degenerate solution");
  }

  ZeroSumSolution solution{normalized(std::move(x)), normalized(std::move(y)), 0.0};

  // Certificates, computed on the original matrix.
  double worst_row = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += payoff[i][j] * solution.col_strategy[j];
    worst_row = std::max(worst_row, value);
  }
  double worst_col = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double value = 0.0;
    for (int i = 0; i < m; ++i) value += payoff[i][j] * solution.row_strategy[i];
    worst_col = std::min(worst_col, value);
  }
  const double gap = worst_row - worst_col;
  if (!(std::abs(gap) <= 1e-9 * std::max(1.0, magnitude))) {
    throw Error(ErrorCategory::kNumeric,
                "zero-sum LP duality gap " + std::to_string(gap) + " exceeds tolerance");
  }
  // Every support entry must epsilon-best-respond to the other side.
  const double support_eps = 1e-8 * std::max(1.0, magnitude);
  for (int i = 0; i < m; ++i) {
    if (solution.row_strategy[i] <= 1e-9) continue;
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += payoff[i][j] * solution.col_strategy[j];
    if (value < worst_row - support_eps) {
      throw Error(ErrorCategory::kNumeric, "row support is not an epsilon best response");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (solution.col_strategy[j] <= 1e-9) continue;
    double value = 0.0;
    for (int i = 0; i < m; ++i) value += payoff[i][j] * solution.row_strategy[i];
    if (value > worst_col + support_eps) {
      throw Error(ErrorCategory::kNumeric, "column support is not an epsilon best response");
    }
  }
  solution.value = 0.5 * (worst_row + worst_col);
  return solution;
}

MetaSolution solve_zero_sum(const RestrictedPayoffMatrix& restricted) {
  ZeroSumSolution solution = solve_zero_sum_matrix(restricted.matrix());
  return {MetaPolicy(1, std::move(solution.row_strategy)),
          MetaPolicy(2, std::move(solution.col_strategy)), solution.value};
}

}  // namespace teamgames
