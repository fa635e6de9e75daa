#pragma once

#include <span>
#include <string>
#include <vector>

namespace teamgames {

// A single-state two-team zero-sum game. Only team 1's payoff tensor is
// stored; team 2's payoff is its negation everywhere.
//
// Joint actions are indexed in mixed radix with player 1 most significant:
// for per-player action counts (c_1, ..., c_n), the joint index of actions
// (a_1, ..., a_n) is ((a_1 * c_2 + a_2) * c_3 + a_3) * ... .
// The payoff tensor is dense, row-major: payoff(j1, j2) lives at
// j1 * joint_action_count(2) + j2.
class TeamGame {
 public:
  TeamGame(std::vector<int> team1_action_counts,
           std::vector<int> team2_action_counts, std::vector<double> payoff1,
           std::string name = {},
           std::vector<std::vector<std::string>> team1_labels = {},
           std::vector<std::vector<std::string>> team2_labels = {});

  const std::string& name() const { return name_; }

  int num_players(int team_id) const { return static_cast<int>(action_counts(team_id).size()); }
  const std::vector<int>& action_counts(int team_id) const;
  int joint_action_count(int team_id) const;

  // Team 1's reward for the pure joint-action pair; team 2 receives the
  // negation.
  double payoff(int joint1, int joint2) const {
    return payoff_[static_cast<std::size_t>(joint1) * cols_ + joint2];
  }
  std::span<const double> row(int joint1) const {
    return {payoff_.data() + static_cast<std::size_t>(joint1) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  const std::vector<double>& payoff_table() const { return payoff_; }

  int encode_joint(int team_id, std::span<const int> actions) const;
  std::vector<int> decode_joint(int team_id, int joint) const;

  // Per-player action labels; defaults to decimal indices when a game is
  // built without explicit labels.
  const std::vector<std::vector<std::string>>& labels(int team_id) const;

  bool same_shape(const TeamGame& other) const {
    return team1_counts_ == other.team1_counts_ && team2_counts_ == other.team2_counts_;
  }

 private:
  std::vector<int> team1_counts_;
  std::vector<int> team2_counts_;
  std::vector<double> payoff_;
  int rows_ = 0;
  int cols_ = 0;
  std::string name_;
  std::vector<std::vector<std::string>> labels1_;
  std::vector<std::vector<std::string>> labels2_;
};

}  // namespace teamgames
