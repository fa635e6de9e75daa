#include "teamgames/evaluation.hpp"

#include <algorithm>
#include <limits>

#include "teamgames/error.hpp"
#include "teamgames/meta.hpp"

namespace teamgames {

double exploitability(const TeamGame& game, const JointPolicy& p1,
                      const JointPolicy& p2) {
  if (p1.team_id() != 1 || p2.team_id() != 2) {
    throw Error(ErrorCategory::kShape, "exploitability wants (team 1, team 2) policies");
  }
  if (p1.size() != game.joint_action_count(1) || p2.size() != game.joint_action_count(2)) {
    throw Error(ErrorCategory::kShape, "policy length does not match the game");
  }
  // Team 2's best response to p1: minimize team 1's column payoff.
  double min_col = std::numeric_limits<double>::infinity();
  for (int j = 0; j < game.joint_action_count(2); ++j) {
    double value = 0.0;
    for (int i = 0; i < p1.size(); ++i) value += p1.probs()[i] * game.payoff(i, j);
    min_col = std::min(min_col, value);
  }
  // Team 1's best response to p2: maximize the row payoff.
  double max_row = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.joint_action_count(1); ++i) {
    double value = 0.0;
    for (int j = 0; j < p2.size(); ++j) value += p2.probs()[j] * game.payoff(i, j);
    max_row = std::max(max_row, value);
  }
  return max_row - min_col;
}

FullGameSolution solve_full_tmecor(const TeamGame& game) {
  const long long product = static_cast<long long>(game.joint_action_count(1)) *
                            game.joint_action_count(2);
  if (product > 1'000'000) {
    throw Error(ErrorCategory::kSizeGuard,
                "joint-action product exceeds the 10^6 enumeration guard");
  }
  std::vector<std::vector<double>> matrix(game.joint_action_count(1));
  for (int i = 0; i < game.joint_action_count(1); ++i) {
    matrix[i].assign(game.row(i).begin(), game.row(i).end());
  }
  ZeroSumSolution solution = solve_zero_sum_matrix(matrix);
  return {JointPolicy(1, std::move(solution.row_strategy)),
          JointPolicy(2, std::move(solution.col_strategy)), solution.value};
}

std::array<double, 3> project_team_rps(const JointPolicy& p) {
  if (p.size() != 4) {
    throw Error(ErrorCategory::kShape, "Team-RPS projection needs a 4-entry joint policy");
  }
  // Joint order ((a,a),(a,b),(b,a),(b,b)): Rock, Paper, Scissors, Scissors.
  return {p.probs()[0], p.probs()[1], p.probs()[2] + p.probs()[3]};
}

Table export_trajectory(const RunTrace& trace, TrajectoryProjection projection) {
  Table table;
  table.name = projection == TrajectoryProjection::kRaw ? "trajectory_raw"
                                                        : "trajectory_team_rps";
  table.columns = {"iter", "team", "coords"};
  bool any = false;
  for (const IterationRecord& it : trace.iterations) {
    for (int team = 1; team <= 2; ++team) {
      const std::vector<double>& coords = team == 1 ? it.traj1 : it.traj2;
      if (coords.empty()) continue;
      any = true;
      std::vector<double> row{static_cast<double>(it.iteration),
                              static_cast<double>(team)};
      if (projection == TrajectoryProjection::kRaw) {
        row.insert(row.end(), coords.begin(), coords.end());
      } else {
        const auto decisions = project_team_rps(JointPolicy(team, coords));
        row.insert(row.end(), decisions.begin(), decisions.end());
      }
      table.rows.push_back(std::move(row));
    }
  }
  if (!any) {
    throw Error(ErrorCategory::kConfig, "trace has no recorded trajectory data");
  }
  return table;
}

}  // namespace teamgames
