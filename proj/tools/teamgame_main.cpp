// teamgame: two-team zero-sum equilibrium toolkit CLI.
//
// Subcommands:
//   run       run a population-loop / self-play experiment, write a trace
//   eval      exploitability and best-response values of a policy pair
//   value     exact full-game value and equilibrium pair
//   gen       generate a random game file
//   validate  parse a game file and report problems
//
// Every error path prints a single line "error:<category>: ..." and exits
// nonzero: 2 config, 3 parse, 4 size guard, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teamgames/builtin.hpp"
#include "teamgames/engine.hpp"
#include "teamgames/error.hpp"
#include "teamgames/evaluation.hpp"
#include "teamgames/oracles.hpp"
#include "teamgames/textio.hpp"
#include "teamgames/trace.hpp"

namespace {

using nlohmann::json;
using namespace teamgames;

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kConfig: return 2;
    case ErrorCategory::kParse: return 3;
    case ErrorCategory::kSizeGuard: return 4;
    default: return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::kConfig, "cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::kConfig, "cannot write file '" + path + "'");
  out << content;
}

std::vector<int> parse_sizes(const std::string& text, const char* field) {
  std::vector<int> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      sizes.push_back(std::stoi(item));
    } catch (...) {
      throw Error(ErrorCategory::kConfig, std::string(field) + ": bad size list '" + text + "'");
    }
  }
  if (sizes.empty()) {
    throw Error(ErrorCategory::kConfig, std::string(field) + ": empty size list");
  }
  return sizes;
}

struct RunOptions {
  std::string game;
  std::string algo;
  std::string out;
  std::string config_path;
  std::optional<int> iters;
  std::optional<std::uint64_t> seed;
  std::optional<double> br_gap;
  std::optional<int> restarts;
  bool rock_init = false;
  bool no_trajectories = false;
  std::vector<std::uint64_t> seeds;  // sweep, from config file
};

// Flags override config-file values.
void merge_config_file(RunOptions& options) {
  if (options.config_path.empty()) return;
  json config;
  try {
    config = json::parse(read_file(options.config_path));
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::kConfig,
                "config: " + options.config_path + ": " + e.what());
  }
  if (options.game.empty() && config.contains("game")) {
    options.game = config["game"].get<std::string>();
  }
  if (options.algo.empty() && config.contains("algorithm")) {
    options.algo = config["algorithm"].get<std::string>();
  }
  if (options.out.empty() && config.contains("out")) {
    options.out = config["out"].get<std::string>();
  }
  if (!options.iters && config.contains("max_iterations")) {
    options.iters = config["max_iterations"].get<int>();
  }
  if (!options.br_gap && config.contains("br_gap_tolerance")) {
    options.br_gap = config["br_gap_tolerance"].get<double>();
  }
  if (!options.restarts && config.contains("restarts")) {
    options.restarts = config["restarts"].get<int>();
  }
  if (config.contains("team_psro_rock_init")) {
    options.rock_init = options.rock_init || config["team_psro_rock_init"].get<bool>();
  }
  if (config.contains("record_trajectories") && !config["record_trajectories"].get<bool>()) {
    options.no_trajectories = true;
  }
  if (!options.seed) {
    if (config.contains("seed")) {
      options.seed = config["seed"].get<std::uint64_t>();
    } else if (config.contains("seeds")) {
      options.seeds = config["seeds"].get<std::vector<std::uint64_t>>();
      if (options.seeds.empty()) {
        throw Error(ErrorCategory::kConfig, "seeds: empty seed list");
      }
      for (std::size_t i = 0; i < options.seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < options.seeds.size(); ++j) {
          if (options.seeds[i] == options.seeds[j]) {
            throw Error(ErrorCategory::kConfig, "seeds: seeds must be distinct");
          }
        }
      }
    }
  }
}

int cmd_run(RunOptions options) {
  merge_config_file(options);
  if (options.game.empty()) throw Error(ErrorCategory::kConfig, "game: missing --game");
  if (options.algo.empty()) throw Error(ErrorCategory::kConfig, "algo: missing --algo");
  if (options.out.empty()) throw Error(ErrorCategory::kConfig, "out: missing --out");
  if (!options.seed && options.seeds.empty()) {
    throw Error(ErrorCategory::kConfig, "seed: missing --seed (no wall-clock default)");
  }

  RunConfig config;
  config.algorithm = parse_algorithm(options.algo);
  if (options.iters) config.max_iterations = *options.iters;
  if (options.br_gap) config.br_gap_tolerance = *options.br_gap;
  if (options.restarts) config.bro.restarts = *options.restarts;
  config.record_trajectories = !options.no_trajectories;
  config.team_psro_rock_init = options.rock_init;

  const TeamGame game = load_game(options.game);
  std::vector<std::uint64_t> seeds =
      options.seed ? std::vector<std::uint64_t>{*options.seed} : options.seeds;
  for (std::uint64_t seed : seeds) {
    config.seed = seed;
    const RunTrace trace = teamgames::run(game, config);
    std::string path = options.out;
    if (seeds.size() > 1) path += ".seed" + std::to_string(seed);
    write_file(path, serialize_trace(trace));
    std::cout << "seed " << seed << " iterations " << trace.total_iterations
              << " final_exploitability " << format_double(trace.final_exploitability)
              << "\n";
  }
  return 0;
}

JointPolicy load_joint_policy(const std::string& path, const TeamGame& game,
                              int expected_team) {
  const TeamPolicy policy = parse_policy(read_file(path));
  if (team_of(policy) != expected_team) {
    throw Error(ErrorCategory::kParse,
                path + ": expected a team " + std::to_string(expected_team) + " policy");
  }
  try {
    return to_joint(policy, game);
  } catch (const Error& e) {
    throw Error(ErrorCategory::kParse, path + ": " + e.what());
  }
}

int cmd_eval(const std::string& game_name, const std::string& p1_path,
             const std::string& p2_path) {
  const TeamGame game = load_game(game_name);
  const JointPolicy p1 = load_joint_policy(p1_path, game, 1);
  const JointPolicy p2 = load_joint_policy(p2_path, game, 2);
  const JointBestResponse br1 = joint_best_response(game, 1, p2);
  const JointBestResponse br2 = joint_best_response(game, 2, p1);
  std::cout << "br1_value " << format_double(br1.value) << "\n";
  std::cout << "br2_value " << format_double(br2.value) << "\n";
  std::cout << "exploitability " << format_double(exploitability(game, p1, p2)) << "\n";
  return 0;
}

int cmd_value(const std::string& game_name) {
  const TeamGame game = load_game(game_name);
  const FullGameSolution solution = solve_full_tmecor(game);
  std::cout << "value " << format_double(solution.value) << "\n";
  std::cout << "p1";
  for (double p : solution.p1.probs()) std::cout << " " << format_double(p);
  std::cout << "\np2";
  for (double p : solution.p2.probs()) std::cout << " " << format_double(p);
  std::cout << "\n";
  return 0;
}

int cmd_gen(const std::string& team1, const std::string& team2, const std::string& range,
            std::uint64_t seed, const std::string& out, const std::string& name) {
  const std::vector<int> sizes1 = parse_sizes(team1, "team1");
  const std::vector<int> sizes2 = parse_sizes(team2, "team2");
  const std::size_t comma = range.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCategory::kConfig, "range: expected 'lo,hi'");
  }
  auto lo = parse_double_token(range.substr(0, comma));
  auto hi = parse_double_token(range.substr(comma + 1));
  if (!lo || !hi) throw Error(ErrorCategory::kConfig, "range: expected 'lo,hi'");
  TeamGame game = random_team_game(sizes1, sizes2, {*lo, *hi}, seed);
  if (!name.empty()) {
    game = TeamGame(sizes1, sizes2, game.payoff_table(), name);
  }
  write_file(out, serialize_game(game));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  const TeamGame game = parse_game(read_file(path));
  std::cout << "ok team1_joint_actions " << game.joint_action_count(1)
            << " team2_joint_actions " << game.joint_action_count(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-team zero-sum equilibrium toolkit"};
  app.require_subcommand(1);

  RunOptions run_options;
  CLI::App* run = app.add_subcommand("run", "Run an experiment and write a trace");
  run->add_option("--game", run_options.game, "Builtin name or game file path");
  run->add_option("--algo", run_options.algo,
                  "hpsro|team_psro|psro_joint|indep_psro|self_play|fsp");
  run->add_option("--iters", run_options.iters, "Maximum iterations");
  run->add_option("--seed", run_options.seed, "Run seed (required; no wall-clock default)");
  run->add_option("--out", run_options.out, "Trace output path");
  run->add_option("--config", run_options.config_path, "JSON experiment config file");
  run->add_option("--br-gap", run_options.br_gap, "Best-response gap stop tolerance");
  run->add_option("--restarts", run_options.restarts, "Sequential oracle restarts");
  run->add_flag("--rock-init", run_options.rock_init,
                "Team PSRO: start from the pure first-action shared policy");
  run->add_flag("--no-traj", run_options.no_trajectories, "Skip trajectory recording");

  std::string eval_game, eval_p1, eval_p2;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a policy pair");
  eval->add_option("--game", eval_game)->required();
  eval->add_option("--p1", eval_p1, "Team 1 policy file")->required();
  eval->add_option("--p2", eval_p2, "Team 2 policy file")->required();

  std::string value_game;
  CLI::App* value = app.add_subcommand("value", "Exact full-game value and equilibrium");
  value->add_option("--game", value_game)->required();

  std::string gen_team1, gen_team2, gen_range = "-1,1", gen_out, gen_name;
  std::optional<std::uint64_t> gen_seed;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random game file");
  gen->add_option("--team1", gen_team1, "Comma-separated action counts")->required();
  gen->add_option("--team2", gen_team2, "Comma-separated action counts")->required();
  gen->add_option("--range", gen_range, "Payoff range lo,hi");
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output path")->required();
  gen->add_option("--name", gen_name, "Game name");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a game file");
  validate->add_option("--game", validate_path)->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_options);
    if (eval->parsed()) return cmd_eval(eval_game, eval_p1, eval_p2);
    if (value->parsed()) return cmd_value(value_game);
    if (gen->parsed()) return cmd_gen(gen_team1, gen_team2, gen_range, *gen_seed, gen_out, gen_name);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error:config: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error:" << to_string(e.category()) << ": " << e.what() << "\n";
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error:internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
