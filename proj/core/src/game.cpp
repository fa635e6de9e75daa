#include "teamgames/game.hpp"

#include <cmath>
#include <cstddef>
#include <set>
#include <string>

#include "teamgames/error.hpp"

namespace teamgames {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kRepresentation: return "representation";
    case ErrorCategory::kShape: return "shape";
    case ErrorCategory::kParse: return "parse";
    case ErrorCategory::kConfig: return "config";
    case ErrorCategory::kSizeGuard: return "size";
    case ErrorCategory::kNumeric: return "numeric";
  }
  return "unknown";
}

namespace {

int checked_product(const std::vector<int>& counts, const char* team) {
  if (counts.empty()) {
    throw Error(ErrorCategory::kShape, std::string(team) + " has no players");
  }
  long long product = 1;
  for (int c : counts) {
    if (c <= 0) {
      throw Error(ErrorCategory::kShape,
                  std::string(team) + " has a non-positive action count");
    }
    product *= c;
    if (product > (1LL << 31)) {
      throw Error(ErrorCategory::kSizeGuard,
                  std::string(team) + " joint action space too large");
    }
  }
  return static_cast<int>(product);
}

std::vector<std::vector<std::string>> default_labels(const std::vector<int>& counts) {
  std::vector<std::vector<std::string>> labels;
  labels.reserve(counts.size());
  for (int c : counts) {
    std::vector<std::string> player;
    player.reserve(c);
    for (int a = 0; a < c; ++a) player.push_back(std::to_string(a));
    labels.push_back(std::move(player));
  }
  return labels;
}

void check_labels(const std::vector<std::vector<std::string>>& labels,
                  const std::vector<int>& counts, const char* team) {
  if (labels.size() != counts.size()) {
    throw Error(ErrorCategory::kShape,
                std::string(team) + " label lists do not match player count");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (static_cast<int>(labels[i].size()) != counts[i]) {
      throw Error(ErrorCategory::kShape,
                  std::string(team) + " player label count mismatch");
    }
    std::set<std::string> unique(labels[i].begin(), labels[i].end());
    if (unique.size() != labels[i].size()) {
      throw Error(ErrorCategory::kParse,
                  std::string(team) + " has duplicate action labels for a player");
    }
  }
}

}  // namespace

TeamGame::TeamGame(std::vector<int> team1_action_counts,
                   std::vector<int> team2_action_counts,
                   std::vector<double> payoff1, std::string name,
                   std::vector<std::vector<std::string>> team1_labels,
                   std::vector<std::vector<std::string>> team2_labels)
    : team1_counts_(std::move(team1_action_counts)),
      team2_counts_(std::move(team2_action_counts)),
      payoff_(std::move(payoff1)),
      name_(std::move(name)),
      labels1_(std::move(team1_labels)),
      labels2_(std::move(team2_labels)) {
  rows_ = checked_product(team1_counts_, "team 1");
  cols_ = checked_product(team2_counts_, "team 2");
  if (payoff_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw Error(ErrorCategory::kShape,
                "payoff tensor has " + std::to_string(payoff_.size()) +
                    " entries, expected " + std::to_string(rows_ * cols_));
  }
  for (double v : payoff_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCategory::kParse, "payoff tensor has a non-finite entry");
    }
  }
  if (labels1_.empty()) labels1_ = default_labels(team1_counts_);
  if (labels2_.empty()) labels2_ = default_labels(team2_counts_);
  check_labels(labels1_, team1_counts_, "team 1");
  check_labels(labels2_, team2_counts_, "team 2");
}

const std::vector<int>& TeamGame::action_counts(int team_id) const {
  if (team_id == 1) return team1_counts_;
  if (team_id == 2) return team2_counts_;
  throw Error(ErrorCategory::kShape, "team_id must be 1 or 2");
}

int TeamGame::joint_action_count(int team_id) const {
  if (team_id == 1) return rows_;
  if (team_id == 2) return cols_;
  throw Error(ErrorCategory::kShape, "team_id must be 1 or 2");
}

int TeamGame::encode_joint(int team_id, std::span<const int> actions) const {
  const std::vector<int>& counts = action_counts(team_id);
  if (actions.size() != counts.size()) {
    throw Error(ErrorCategory::kShape, "joint action arity mismatch");
  }
  int joint = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= counts[i]) {
      throw Error(ErrorCategory::kShape, "action index out of range");
    }
    joint = joint * counts[i] + actions[i];
  }
  return joint;
}

std::vector<int> TeamGame::decode_joint(int team_id, int joint) const {
  const std::vector<int>& counts = action_counts(team_id);
  if (joint < 0 || joint >= joint_action_count(team_id)) {
    throw Error(ErrorCategory::kShape, "joint action index out of range");
  }
  std::vector<int> actions(counts.size());
  for (int i = static_cast<int>(counts.size()) - 1; i >= 0; --i) {
    actions[i] = joint % counts[i];
    joint /= counts[i];
  }
  return actions;
}

const std::vector<std::vector<std::string>>& TeamGame::labels(int team_id) const {
  if (team_id == 1) return labels1_;
  if (team_id == 2) return labels2_;
  throw Error(ErrorCategory::kShape, "team_id must be 1 or 2");
}

}  // namespace teamgames
