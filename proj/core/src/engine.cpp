#include "teamgames/engine.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include "teamgames/error.hpp"
#include "teamgames/evaluation.hpp"
#include "teamgames/meta.hpp"
#include "teamgames/oracles.hpp"
#include "teamgames/rng.hpp"

namespace teamgames {

namespace {

constexpr double kDuplicateTolerance = 1e-9;

JointPolicy mix_population(int team_id, const std::vector<JointPolicy>& joints,
                           const std::vector<double>& weights) {
  std::vector<double> probs(joints[0].size(), 0.0);
  for (std::size_t k = 0; k < joints.size(); ++k) {
    for (int i = 0; i < joints[k].size(); ++i) {
      probs[i] += weights[k] * joints[k].probs()[i];
    }
  }
  return JointPolicy(team_id, std::move(probs));
}

bool is_duplicate(const JointPolicy& candidate, const std::vector<JointPolicy>& joints) {
  for (const JointPolicy& member : joints) {
    double sup = 0.0;
    for (int i = 0; i < candidate.size(); ++i) {
      sup = std::max(sup, std::abs(candidate.probs()[i] - member.probs()[i]));
    }
    if (sup <= kDuplicateTolerance) return true;
  }
  return false;
}

struct TeamBestResponse {
  TeamPolicy policy;
  double value;  // from the responding team's own perspective
};

class PopulationRun {
 public:
  PopulationRun(const TeamGame& game, const RunConfig& config)
      : game_(game), config_(config), seed_stream_(config.seed) {}

  RunTrace execute() {
    RunTrace trace;
    trace.game_name = game_.name();
    trace.config = config_;

    init_populations();
    RestrictedPayoffMatrix restricted =
        build_restricted_matrix(game_, pop1_, pop2_);

    for (int iteration = 1; iteration <= config_.max_iterations; ++iteration) {
      const MetaSolution meta = solve_zero_sum(restricted);
      const JointPolicy induced1 =
          mix_population(1, restricted.team1_entries(), meta.sigma1.weights());
      const JointPolicy induced2 =
          mix_population(2, restricted.team2_entries(), meta.sigma2.weights());

      TeamBestResponse br1 = best_response(1, induced2);
      TeamBestResponse br2 = best_response(2, induced1);
      const double gap1 = br1.value - meta.value;
      const double gap2 = br2.value + meta.value;

      IterationRecord record;
      record.iteration = iteration;
      record.pop1_size = static_cast<int>(pop1_.size());
      record.pop2_size = static_cast<int>(pop2_.size());
      record.meta1 = meta.sigma1.weights();
      record.meta2 = meta.sigma2.weights();
      record.restricted_value = meta.value;
      record.br1_value = br1.value;
      record.br2_value = br2.value;
      record.br1_gap = gap1;
      record.br2_gap = gap2;
      record.exploitability = exploitability(game_, induced1, induced2);
      if (config_.record_trajectories) {
        record.traj1 = induced1.probs();
        record.traj2 = induced2.probs();
      }

      if (gap1 <= config_.br_gap_tolerance && gap2 <= config_.br_gap_tolerance) {
        trace.iterations.push_back(std::move(record));
        trace.termination = TerminationReason::kBrGap;
        break;
      }

      const JointPolicy br1_joint = to_joint(br1.policy, game_);
      const JointPolicy br2_joint = to_joint(br2.policy, game_);
      const bool dup1 = is_duplicate(br1_joint, restricted.team1_entries());
      const bool dup2 = is_duplicate(br2_joint, restricted.team2_entries());
      if (dup1 && dup2) {
        trace.iterations.push_back(std::move(record));
        trace.termination = TerminationReason::kPolicyRepeat;
        break;
      }
      if (!dup1) {
        pop1_.push_back(br1.policy);
        restricted.append_team1(game_, br1.policy);
        record.appended.push_back(record_policy(br1.policy));
      }
      if (!dup2) {
        pop2_.push_back(br2.policy);
        restricted.append_team2(game_, br2.policy);
        record.appended.push_back(record_policy(br2.policy));
      }
      trace.iterations.push_back(std::move(record));
      if (iteration == config_.max_iterations) {
        trace.termination = TerminationReason::kMaxIterations;
      }
    }

    trace.total_iterations = static_cast<int>(trace.iterations.size());
    trace.final_exploitability = trace.iterations.back().exploitability;
    return trace;
  }

 private:
  void require_equal_counts_for_sharing() const {
    for (int team = 1; team <= 2; ++team) {
      const std::vector<int>& counts = game_.action_counts(team);
      for (int c : counts) {
        if (c != counts[0]) {
          throw Error(ErrorCategory::kConfig,
                      "team_psro needs equal per-player action counts on each team; "
                      "shared policies cannot express this game");
        }
      }
    }
  }

  void init_populations() {
    switch (config_.algorithm) {
      case Algorithm::kHpsro:
      case Algorithm::kIndepPsro:
        pop1_ = {ProductPolicy::uniform(1, game_.action_counts(1))};
        pop2_ = {ProductPolicy::uniform(2, game_.action_counts(2))};
        prev_product1_ = ProductPolicy::uniform(1, game_.action_counts(1));
        prev_product2_ = ProductPolicy::uniform(2, game_.action_counts(2));
        break;
      case Algorithm::kPsroJoint:
        pop1_ = {JointPolicy(1, std::vector<double>(game_.joint_action_count(1),
                                                    1.0 / game_.joint_action_count(1)))};
        pop2_ = {JointPolicy(2, std::vector<double>(game_.joint_action_count(2),
                                                    1.0 / game_.joint_action_count(2)))};
        break;
      case Algorithm::kTeamPsro: {
        require_equal_counts_for_sharing();
        for (int team = 1; team <= 2; ++team) {
          const int actions = game_.action_counts(team)[0];
          std::vector<double> probs(actions, 1.0 / actions);
          if (config_.team_psro_rock_init) {
            probs.assign(actions, 0.0);
            probs[0] = 1.0;
          }
          (team == 1 ? pop1_ : pop2_).push_back(SharedPolicy(team, std::move(probs)));
        }
        break;
      }
      default:
        throw Error(ErrorCategory::kConfig, "not a population algorithm");
    }
  }

  TeamBestResponse best_response(int team_id, const JointPolicy& opponent) {
    BroConfig bro = config_.bro;
    bro.permutation_seed = seed_stream_.next();
    switch (config_.algorithm) {
      case Algorithm::kHpsro: {
        ProductBestResponse br = sequential_bro(game_, team_id, opponent, bro);
        return {br.policy, br.value};
      }
      case Algorithm::kTeamPsro: {
        SharedBestResponse br = shared_bro(game_, team_id, opponent, bro);
        return {br.policy, br.value};
      }
      case Algorithm::kPsroJoint: {
        JointBestResponse br = joint_best_response(game_, team_id, opponent);
        return {JointPolicy::pure(team_id, game_.joint_action_count(team_id),
                                  br.joint_action),
                br.value};
      }
      case Algorithm::kIndepPsro: {
        ProductPolicy& previous = team_id == 1 ? *prev_product1_ : *prev_product2_;
        ProductBestResponse br =
            independent_bro(game_, team_id, opponent, previous, bro);
        previous = br.policy;
        return {br.policy, br.value};
      }
      default:
        throw Error(ErrorCategory::kConfig, "not a population algorithm");
    }
  }

  const TeamGame& game_;
  const RunConfig& config_;
  SplitMix64 seed_stream_;
  std::vector<TeamPolicy> pop1_;
  std::vector<TeamPolicy> pop2_;
  std::optional<ProductPolicy> prev_product1_;
  std::optional<ProductPolicy> prev_product2_;
};

RunTrace run_self_play(const TeamGame& game, const RunConfig& config) {
  RunTrace trace;
  trace.game_name = game.name();
  trace.config = config;
  SplitMix64 seed_stream(config.seed);

  ProductPolicy current1 = ProductPolicy::uniform(1, game.action_counts(1));
  ProductPolicy current2 = ProductPolicy::uniform(2, game.action_counts(2));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    // Alternating updates: team 1 responds first, team 2 responds to the
    // freshly updated team 1.
    BroConfig bro = config.bro;
    bro.permutation_seed = seed_stream.next();
    ProductBestResponse br1 = sequential_bro(game, 1, to_joint(current2, game), bro);
    current1 = br1.policy;
    bro.permutation_seed = seed_stream.next();
    ProductBestResponse br2 = sequential_bro(game, 2, to_joint(current1, game), bro);
    current2 = br2.policy;

    const JointPolicy joint1 = to_joint(current1, game);
    const JointPolicy joint2 = to_joint(current2, game);
    IterationRecord record;
    record.iteration = iteration;
    record.appended = {record_policy(current1), record_policy(current2)};
    record.restricted_value = nan;
    record.br1_value = br1.value;
    record.br2_value = br2.value;
    record.br1_gap = nan;
    record.br2_gap = nan;
    record.exploitability = exploitability(game, joint1, joint2);
    if (config.record_trajectories) {
      record.traj1 = joint1.probs();
      record.traj2 = joint2.probs();
    }
    trace.iterations.push_back(std::move(record));
  }
  trace.termination = TerminationReason::kMaxIterations;
  trace.total_iterations = static_cast<int>(trace.iterations.size());
  trace.final_exploitability = trace.iterations.back().exploitability;
  return trace;
}

RunTrace run_fsp(const TeamGame& game, const RunConfig& config) {
  RunTrace trace;
  trace.game_name = game.name();
  trace.config = config;
  SplitMix64 seed_stream(config.seed);

  // Opponent averages start at the uniform initial policies; after the
  // first iteration they are the running means of the best responses.
  std::vector<double> avg1 = to_joint(ProductPolicy::uniform(1, game.action_counts(1)), game).probs();
  std::vector<double> avg2 = to_joint(ProductPolicy::uniform(2, game.action_counts(2)), game).probs();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    BroConfig bro = config.bro;
    bro.permutation_seed = seed_stream.next();
    ProductBestResponse br1 = sequential_bro(game, 1, JointPolicy(2, avg2), bro);
    bro.permutation_seed = seed_stream.next();
    ProductBestResponse br2 = sequential_bro(game, 2, JointPolicy(1, avg1), bro);

    const JointPolicy joint1 = to_joint(br1.policy, game);
    const JointPolicy joint2 = to_joint(br2.policy, game);
    // avg_t = ((t-1) avg_{t-1} + current_t) / t, with avg_1 = current_1.
    if (iteration == 1) {
      avg1 = joint1.probs();
      avg2 = joint2.probs();
    } else {
      const double t = iteration;
      for (std::size_t i = 0; i < avg1.size(); ++i) {
        avg1[i] = ((t - 1.0) * avg1[i] + joint1.probs()[i]) / t;
      }
      for (std::size_t i = 0; i < avg2.size(); ++i) {
        avg2[i] = ((t - 1.0) * avg2[i] + joint2.probs()[i]) / t;
      }
    }

    IterationRecord record;
    record.iteration = iteration;
    record.appended = {record_policy(br1.policy), record_policy(br2.policy)};
    record.restricted_value = nan;
    record.br1_value = br1.value;
    record.br2_value = br2.value;
    record.br1_gap = nan;
    record.br2_gap = nan;
    record.exploitability =
        exploitability(game, JointPolicy(1, avg1), JointPolicy(2, avg2));
    if (config.record_trajectories) {
      record.traj1 = avg1;
      record.traj2 = avg2;
    }
    trace.iterations.push_back(std::move(record));
  }
  trace.termination = TerminationReason::kMaxIterations;
  trace.total_iterations = static_cast<int>(trace.iterations.size());
  trace.final_exploitability = trace.iterations.back().exploitability;
  return trace;
}

}  // namespace

RunTrace run(const TeamGame& game, const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunTrace trace;
  switch (config.algorithm) {
    case Algorithm::kSelfPlay:
      trace = run_self_play(game, config);
      break;
    case Algorithm::kFsp:
      trace = run_fsp(game, config);
      break;
    default:
      trace = PopulationRun(game, config).execute();
      break;
  }
  trace.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace teamgames
