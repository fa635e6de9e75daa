#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "teamgames/oracles.hpp"
#include "teamgames/policy.hpp"

namespace teamgames {

enum class Algorithm {
  kHpsro,
  kTeamPsro,
  kPsroJoint,
  kIndepPsro,
  kSelfPlay,
  kFsp,
};

const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

enum class TerminationReason { kBrGap, kPolicyRepeat, kMaxIterations };
const char* to_string(TerminationReason reason);

struct RunConfig {
  Algorithm algorithm = Algorithm::kHpsro;
  int max_iterations = 100;
  double br_gap_tolerance = 1e-9;
  std::uint64_t seed = 0;
  BroConfig bro;
  bool record_trajectories = true;
  // Team-RPS reproduction runs only: start Team PSRO from the pure Rock
  // shared policy instead of uniform.
  bool team_psro_rock_init = false;

  void validate() const;
};

// Numeric form of a policy added to a population: the representation tag
// plus its flattened probabilities (per-player vectors concatenated for
// product policies).
struct PolicyRecord {
  int team_id = 0;
  std::string kind;  // "joint" | "product" | "shared"
  std::vector<double> values;
};

PolicyRecord record_policy(const TeamPolicy& policy);

struct IterationRecord {
  int iteration = 0;
  int pop1_size = 0;
  int pop2_size = 0;
  std::vector<PolicyRecord> appended;
  std::vector<double> meta1;  // empty for self_play / fsp
  std::vector<double> meta2;
  double restricted_value = 0.0;  // NaN for self_play / fsp
  double br1_value = 0.0;
  double br2_value = 0.0;
  double br1_gap = 0.0;
  double br2_gap = 0.0;
  double exploitability = 0.0;
  std::vector<double> traj1;  // induced joint distributions, if recorded
  std::vector<double> traj2;
};

struct RunTrace {
  std::string game_name;
  RunConfig config;
  std::vector<IterationRecord> iterations;
  TerminationReason termination = TerminationReason::kMaxIterations;
  int total_iterations = 0;
  double final_exploitability = 0.0;
  double wall_clock_seconds = 0.0;  // not serialized; timing is not reproducible
};

// The strategy pair whose exploitability the trace reports at the given
// 1-based iteration. Requires record_trajectories.
std::pair<JointPolicy, JointPolicy> induced_joint_pair(const RunTrace& trace,
                                                       int iteration);

// --- delimited numeric tables -------------------------------------------

struct Table {
  std::string name;
  std::vector<std::string> columns;
  // Rows may be ragged; `columns` documents the fixed prefix.
  std::vector<std::vector<double>> rows;
};

std::string serialize_table(const Table& table);
Table parse_table(const std::string& text);

// --- trace file, versioned header "trace v1" ----------------------------

// Deterministic apart from the single timestamp line.
std::string serialize_trace(const RunTrace& trace);
void write_trace(const RunTrace& trace, std::ostream& out);

// --- policy files, versioned header "policy v1" -------------------------

std::string serialize_policy(const TeamPolicy& policy);
TeamPolicy parse_policy(const std::string& text);

}  // namespace teamgames
