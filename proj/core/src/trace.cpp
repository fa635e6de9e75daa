#include "teamgames/trace.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "teamgames/error.hpp"
#include "teamgames/textio.hpp"

namespace teamgames {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kHpsro: return "hpsro";
    case Algorithm::kTeamPsro: return "team_psro";
    case Algorithm::kPsroJoint: return "psro_joint";
    case Algorithm::kIndepPsro: return "indep_psro";
    case Algorithm::kSelfPlay: return "self_play";
    case Algorithm::kFsp: return "fsp";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "hpsro") return Algorithm::kHpsro;
  if (name == "team_psro") return Algorithm::kTeamPsro;
  if (name == "psro_joint") return Algorithm::kPsroJoint;
  if (name == "indep_psro") return Algorithm::kIndepPsro;
  if (name == "self_play") return Algorithm::kSelfPlay;
  if (name == "fsp") return Algorithm::kFsp;
  throw Error(ErrorCategory::kConfig, "algo: unknown algorithm '" + name + "'");
}

const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kBrGap: return "br_gap";
    case TerminationReason::kPolicyRepeat: return "policy_repeat";
    case TerminationReason::kMaxIterations: return "max_iterations";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (max_iterations < 1) {
    throw Error(ErrorCategory::kConfig, "max_iterations must be >= 1");
  }
  if (br_gap_tolerance < 0.0) {
    throw Error(ErrorCategory::kConfig, "br_gap_tolerance must be >= 0");
  }
  bro.validate();
}

PolicyRecord record_policy(const TeamPolicy& policy) {
  PolicyRecord record;
  record.team_id = team_of(policy);
  if (const auto* joint = std::get_if<JointPolicy>(&policy)) {
    record.kind = "joint";
    record.values = joint->probs();
  } else if (const auto* product = std::get_if<ProductPolicy>(&policy)) {
    record.kind = "product";
    for (const auto& probs : product->per_player()) {
      record.values.insert(record.values.end(), probs.begin(), probs.end());
    }
  } else {
    record.kind = "shared";
    record.values = std::get<SharedPolicy>(policy).probs();
  }
  return record;
}

std::pair<JointPolicy, JointPolicy> induced_joint_pair(const RunTrace& trace,
                                                       int iteration) {
  if (iteration < 1 || iteration > static_cast<int>(trace.iterations.size())) {
    throw Error(ErrorCategory::kShape, "iteration out of range");
  }
  const IterationRecord& record = trace.iterations[iteration - 1];
  if (record.traj1.empty() || record.traj2.empty()) {
    throw Error(ErrorCategory::kConfig, "trace has no recorded trajectories");
  }
  return {JointPolicy(1, record.traj1), JointPolicy(2, record.traj2)};
}

std::string serialize_table(const Table& table) {
  std::ostringstream out;
  out << "table " << table.name << "\n";
  out << "columns";
  for (const std::string& column : table.columns) out << " " << column;
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << " ";
      out << format_double(row[i]);
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

Table parse_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table table;
  if (!std::getline(in, line)) {
    throw Error(ErrorCategory::kParse, "empty table text");
  }
  auto header = split_whitespace(line);
  if (header.size() != 2 || header[0] != "table") {
    throw Error(ErrorCategory::kParse, "expected 'table <name>' header");
  }
  table.name = std::string(header[1]);
  if (!std::getline(in, line)) {
    throw Error(ErrorCategory::kParse, "missing 'columns' line");
  }
  auto columns = split_whitespace(line);
  if (columns.empty() || columns[0] != "columns") {
    throw Error(ErrorCategory::kParse, "missing 'columns' line");
  }
  for (std::size_t i = 1; i < columns.size(); ++i) table.columns.emplace_back(columns[i]);
  bool closed = false;
  while (std::getline(in, line)) {
    auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() == 1 && tokens[0] == "end") {
      closed = true;
      break;
    }
    std::vector<double> row;
    row.reserve(tokens.size());
    for (auto token : tokens) {
      auto value = parse_double_token(token);
      if (!value) {
        throw Error(ErrorCategory::kParse, "malformed table entry '" + std::string(token) + "'");
      }
      row.push_back(*value);
    }
    table.rows.push_back(std::move(row));
  }
  if (!closed) throw Error(ErrorCategory::kParse, "table is missing its 'end' line");
  return table;
}

std::string serialize_trace(const RunTrace& trace) {
  std::ostringstream out;
  out << "trace v1\n";
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  out << "timestamp "
      << std::chrono::duration_cast<std::chrono::milliseconds>(now).count() << "\n";
  out << "game " << trace.game_name << "\n";
  out << "algorithm " << to_string(trace.config.algorithm) << "\n";
  out << "seed " << trace.config.seed << "\n";
  out << "max_iterations " << trace.config.max_iterations << "\n";
  out << "br_gap_tolerance " << format_double(trace.config.br_gap_tolerance) << "\n";
  out << "record_trajectories " << (trace.config.record_trajectories ? 1 : 0) << "\n";
  out << "termination " << to_string(trace.termination) << "\n";
  out << "iterations " << trace.total_iterations << "\n";
  out << "final_exploitability " << format_double(trace.final_exploitability) << "\n";

  Table iterations{"iterations",
                   {"iter", "pop1", "pop2", "restricted_value", "br1_value", "br2_value",
                    "br1_gap", "br2_gap", "exploitability"},
                   {}};
  Table meta{"meta", {"iter", "team", "weights"}, {}};
  Table policies{"policies", {"iter", "team", "kind", "values"}, {}};
  Table trajectory{"trajectory", {"iter", "team", "coords"}, {}};
  auto kind_code = [](const std::string& kind) -> double {
    if (kind == "joint") return 0;
    if (kind == "product") return 1;
    return 2;
  };
  for (const IterationRecord& it : trace.iterations) {
    iterations.rows.push_back({static_cast<double>(it.iteration),
                               static_cast<double>(it.pop1_size),
                               static_cast<double>(it.pop2_size), it.restricted_value,
                               it.br1_value, it.br2_value, it.br1_gap, it.br2_gap,
                               it.exploitability});
    for (int team = 1; team <= 2; ++team) {
      const std::vector<double>& weights = team == 1 ? it.meta1 : it.meta2;
      if (!weights.empty()) {
        std::vector<double> row{static_cast<double>(it.iteration),
                                static_cast<double>(team)};
        row.insert(row.end(), weights.begin(), weights.end());
        meta.rows.push_back(std::move(row));
      }
    }
    for (const PolicyRecord& policy : it.appended) {
      std::vector<double> row{static_cast<double>(it.iteration),
                              static_cast<double>(policy.team_id),
                              kind_code(policy.kind)};
      row.insert(row.end(), policy.values.begin(), policy.values.end());
      policies.rows.push_back(std::move(row));
    }
    for (int team = 1; team <= 2; ++team) {
      const std::vector<double>& coords = team == 1 ? it.traj1 : it.traj2;
      if (!coords.empty()) {
        std::vector<double> row{static_cast<double>(it.iteration),
                                static_cast<double>(team)};
        row.insert(row.end(), coords.begin(), coords.end());
        trajectory.rows.push_back(std::move(row));
      }
    }
  }
  out << serialize_table(iterations);
  out << serialize_table(meta);
  out << serialize_table(policies);
  if (trace.config.record_trajectories) out << serialize_table(trajectory);
  return out.str();
}

void write_trace(const RunTrace& trace, std::ostream& out) {
  out << serialize_trace(trace);
}

std::string serialize_policy(const TeamPolicy& policy) {
  std::ostringstream out;
  out << "policy v1\n";
  out << "team " << team_of(policy) << "\n";
  if (const auto* joint = std::get_if<JointPolicy>(&policy)) {
    out << "joint";
    for (double p : joint->probs()) out << " " << format_double(p);
    out << "\n";
  } else if (const auto* product = std::get_if<ProductPolicy>(&policy)) {
    out << "product " << product->num_players() << "\n";
    for (const auto& probs : product->per_player()) {
      out << "player";
      for (double p : probs) out << " " << format_double(p);
      out << "\n";
    }
  } else {
    out << "shared";
    for (double p : std::get<SharedPolicy>(policy).probs()) out << " " << format_double(p);
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<double> parse_prob_tokens(const std::vector<std::string_view>& tokens,
                                      std::size_t start) {
  std::vector<double> probs;
  for (std::size_t i = start; i < tokens.size(); ++i) {
    auto value = parse_double_token(tokens[i]);
    if (!value) {
      throw Error(ErrorCategory::kParse,
                  "malformed probability '" + std::string(tokens[i]) + "'");
    }
    probs.push_back(*value);
  }
  if (probs.empty()) throw Error(ErrorCategory::kParse, "empty probability vector");
  return probs;
}

}  // namespace

TeamPolicy parse_policy(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&]() -> std::vector<std::string_view> {
    while (std::getline(in, line)) {
      auto tokens = split_whitespace(line);
      if (!tokens.empty()) return tokens;
    }
    throw Error(ErrorCategory::kParse, "unexpected end of policy file");
  };
  if (next_line() != std::vector<std::string_view>{"policy", "v1"}) {
    throw Error(ErrorCategory::kParse, "expected header 'policy v1'");
  }
  auto team_tokens = next_line();
  if (team_tokens.size() != 2 || team_tokens[0] != "team" ||
      (team_tokens[1] != "1" && team_tokens[1] != "2")) {
    throw Error(ErrorCategory::kParse, "expected 'team 1' or 'team 2'");
  }
  const int team_id = team_tokens[1] == "1" ? 1 : 2;

  auto body = next_line();
  try {
    if (body[0] == "joint") {
      return JointPolicy(team_id, parse_prob_tokens(body, 1));
    }
    if (body[0] == "shared") {
      return SharedPolicy(team_id, parse_prob_tokens(body, 1));
    }
    if (body[0] == "product") {
      if (body.size() != 2) {
        throw Error(ErrorCategory::kParse, "expected 'product <num_players>'");
      }
      auto count = parse_double_token(body[1]);
      if (!count || *count < 1 || *count != std::floor(*count)) {
        throw Error(ErrorCategory::kParse, "bad player count in product policy");
      }
      std::vector<std::vector<double>> per_player;
      for (int p = 0; p < static_cast<int>(*count); ++p) {
        auto player = next_line();
        if (player[0] != "player") {
          throw Error(ErrorCategory::kParse, "expected 'player <probs...>' line");
        }
        per_player.push_back(parse_prob_tokens(player, 1));
      }
      return ProductPolicy(team_id, std::move(per_player));
    }
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::kParse) throw;
    throw Error(ErrorCategory::kParse, e.what());
  }
  throw Error(ErrorCategory::kParse,
              "unknown policy kind '" + std::string(body[0]) + "'");
}

}  // namespace teamgames
