#include "teamgames/builtin.hpp"

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include "teamgames/error.hpp"
#include "teamgames/rng.hpp"
#include "teamgames/textio.hpp"

namespace teamgames {

namespace {

// Decision payoff for classic RPS: 0 = Rock, 1 = Paper, 2 = Scissors.
double rps_payoff(int d1, int d2) {
  if (d1 == d2) return 0.0;
  return ((d1 - d2 + 3) % 3 == 1) ? 1.0 : -1.0;
}

// Joint index over ((a,a),(a,b),(b,a),(b,b)) -> team decision.
int team_rps_decision(int joint) {
  if (joint >= 2) return 2;  // player 1 plays b: Scissors
  return joint == 0 ? 0 : 1; // (a,a): Rock, (a,b): Paper
}

}  // namespace

TeamGame make_team_rps() {
  std::vector<double> payoff(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      payoff[i * 4 + j] = rps_payoff(team_rps_decision(i), team_rps_decision(j));
    }
  }
  std::vector<std::vector<std::string>> labels = {{"a", "b"}, {"a", "b"}};
  return TeamGame({2, 2}, {2, 2}, std::move(payoff), "team_rps", labels, labels);
}

TeamGame make_hetero_matrix_game() {
  // Indicator arithmetic over the mixed-radix order: team 1 joints
  // ((0,0),(0,2),(1,0),(1,2)), team 2 joints ((0,0),(0,3),(1,0),(1,3)).
  std::vector<double> payoff(16);
  for (int i = 0; i < 4; ++i) {
    const int a1_p1 = i / 2;       // 1 iff player 1 plays "1"
    const int a1_p2 = i % 2;       // 1 iff player 2 plays "2"
    for (int j = 0; j < 4; ++j) {
      const int a2_p1 = j / 2;     // 1 iff opponent player 1 plays "1"
      const int a2_p2 = j % 2;     // 1 iff opponent player 2 plays "3"
      double value;
      if (i == 1 && j == 0) {
        value = 4.0;
      } else {
        const double nu1 = 2.0 * a1_p1 + 2.0 * a1_p2;
        const double nu2 = 2.0 * a2_p1 + 3.0 * a2_p2;
        value = nu2 - nu1 + 1.0;
      }
      payoff[i * 4 + j] = value;
    }
  }
  return TeamGame({2, 2}, {2, 2}, std::move(payoff), "hetero_matrix",
                  {{"0", "1"}, {"0", "2"}}, {{"0", "1"}, {"0", "3"}});
}

TeamGame random_team_game(const std::vector<int>& team1_action_counts,
                          const std::vector<int>& team2_action_counts,
                          std::pair<double, double> payoff_range,
                          std::uint64_t seed) {
  const auto [lo, hi] = payoff_range;
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw Error(ErrorCategory::kConfig, "payoff_range must be a finite [lo, hi]");
  }
  for (int c : team1_action_counts) {
    if (c <= 0) throw Error(ErrorCategory::kConfig, "team 1 action counts must be positive");
  }
  for (int c : team2_action_counts) {
    if (c <= 0) throw Error(ErrorCategory::kConfig, "team 2 action counts must be positive");
  }
  long long rows = 1, cols = 1;
  for (int c : team1_action_counts) rows *= c;
  for (int c : team2_action_counts) cols *= c;
  SplitMix64 rng(seed);
  std::vector<double> payoff(static_cast<std::size_t>(rows * cols));
  for (double& v : payoff) v = rng.uniform(lo, hi);
  return TeamGame(team1_action_counts, team2_action_counts, std::move(payoff));
}

namespace {

[[noreturn]] void parse_fail(int line, int column, const std::string& message) {
  throw Error(ErrorCategory::kParse,
              std::to_string(line) + ":" + std::to_string(column) + ": " + message);
}

// Splits "a b | c d" into per-player label lists.
std::vector<std::vector<std::string>> parse_label_groups(std::string_view rest,
                                                         int line) {
  std::vector<std::vector<std::string>> groups(1);
  for (std::string_view token : split_whitespace(rest)) {
    if (token == "|") {
      if (groups.back().empty()) parse_fail(line, 1, "empty player label list");
      groups.emplace_back();
    } else {
      groups.back().emplace_back(token);
    }
  }
  if (groups.back().empty()) parse_fail(line, 1, "empty player label list");
  return groups;
}

}  // namespace

TeamGame parse_game(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_content_line = [&](const char* expected) -> std::string {
    while (std::getline(in, line)) {
      ++line_no;
      if (!split_whitespace(line).empty()) return line;
    }
    parse_fail(line_no + 1, 1, std::string("unexpected end of file, expected ") + expected);
  };

  std::string header = next_content_line("header");
  if (split_whitespace(header) != std::vector<std::string_view>{"teamgame", "v1"}) {
    parse_fail(line_no, 1, "expected header 'teamgame v1'");
  }

  std::string name;
  std::string current = next_content_line("'name' or 'team1'");
  {
    auto tokens = split_whitespace(current);
    if (tokens[0] == "name") {
      std::size_t pos = current.find("name");
      name = current.substr(pos + 4);
      std::size_t start = name.find_first_not_of(" \t");
      name = (start == std::string::npos) ? "" : name.substr(start);
      std::size_t end = name.find_last_not_of(" \t\r");
      if (end != std::string::npos) name = name.substr(0, end + 1);
      current = next_content_line("'team1'");
    }
  }

  auto parse_team_line = [&](const std::string& text_line, const char* keyword) {
    auto tokens = split_whitespace(text_line);
    if (tokens.empty() || tokens[0] != keyword) {
      parse_fail(line_no, 1, std::string("expected '") + keyword + "' line");
    }
    std::size_t pos = text_line.find(keyword);
    return parse_label_groups(std::string_view(text_line).substr(pos + std::string(keyword).size()),
                              line_no);
  };

  auto labels1 = parse_team_line(current, "team1");
  auto labels2 = parse_team_line(next_content_line("'team2'"), "team2");

  std::string payoffs_line = next_content_line("'payoffs'");
  if (split_whitespace(payoffs_line) != std::vector<std::string_view>{"payoffs"}) {
    parse_fail(line_no, 1, "expected 'payoffs' line");
  }

  std::vector<int> counts1, counts2;
  for (const auto& g : labels1) counts1.push_back(static_cast<int>(g.size()));
  for (const auto& g : labels2) counts2.push_back(static_cast<int>(g.size()));
  long long rows = 1, cols = 1;
  for (int c : counts1) rows *= c;
  for (int c : counts2) cols *= c;

  std::vector<double> payoff;
  payoff.reserve(static_cast<std::size_t>(rows * cols));
  while (std::getline(in, line)) {
    ++line_no;
    int column = 1;
    for (std::string_view token : split_whitespace(line)) {
      column = static_cast<int>(token.data() - line.data()) + 1;
      auto value = parse_double_token(token, /*allow_nonfinite=*/true);
      if (!value) parse_fail(line_no, column, "malformed payoff entry '" + std::string(token) + "'");
      if (!std::isfinite(*value)) parse_fail(line_no, column, "non-finite payoff entry");
      payoff.push_back(*value);
    }
  }
  if (payoff.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorCategory::kParse,
                "expected " + std::to_string(rows * cols) + " payoff entries, found " +
                    std::to_string(payoff.size()));
  }

  try {
    return TeamGame(counts1, counts2, std::move(payoff), name, labels1, labels2);
  } catch (const Error& e) {
    throw Error(ErrorCategory::kParse, e.what());
  }
}

std::string serialize_game(const TeamGame& game) {
  std::ostringstream out;
  out << "teamgame v1\n";
  if (!game.name().empty()) out << "name " << game.name() << "\n";
  for (int team = 1; team <= 2; ++team) {
    out << "team" << team;
    const auto& labels = game.labels(team);
    for (std::size_t p = 0; p < labels.size(); ++p) {
      if (p > 0) out << " |";
      for (const std::string& label : labels[p]) out << " " << label;
    }
    out << "\n";
  }
  out << "payoffs\n";
  const int rows = game.joint_action_count(1);
  const int cols = game.joint_action_count(2);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j > 0) out << " ";
      out << format_double(game.payoff(i, j));
    }
    out << "\n";
  }
  return out.str();
}

TeamGame load_game(const std::string& name_or_path) {
  if (name_or_path == "team_rps") return make_team_rps();
  if (name_or_path == "hetero_matrix") return make_hetero_matrix_game();
  if (!std::filesystem::exists(name_or_path)) {
    throw Error(ErrorCategory::kConfig,
                "game: unknown builtin or missing file '" + name_or_path + "'");
  }
  std::ifstream in(name_or_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

}  // namespace teamgames
