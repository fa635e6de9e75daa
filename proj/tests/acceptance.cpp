// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "teamgames/builtin.hpp"
#include "teamgames/engine.hpp"
#include "teamgames/error.hpp"
#include "teamgames/evaluation.hpp"
#include "teamgames/meta.hpp"
#include "teamgames/oracles.hpp"
#include "teamgames/policy.hpp"
#include "teamgames/rng.hpp"
#include "teamgames/trace.hpp"
#include "test_helpers.hpp"

using namespace teamgames;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double tv_to_uniform_decisions(const JointPolicy& p) {
  const std::array<double, 3> d = project_team_rps(p);
  double tv = 0.0;
  for (double x : d) tv += std::abs(x - 1.0 / 3);
  return tv / 2.0;
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

// --- criterion 1: H-PSRO solves Team RPS ---------------------------------

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig config;
  config.algorithm = Algorithm::kHpsro;
  config.max_iterations = 30;
  config.seed = 0;
  const RunTrace trace = run(make_team_rps(), config);
  const double elapsed = seconds_since(start);
  const auto [p1, p2] = induced_joint_pair(trace, trace.total_iterations);
  const double tv1 = tv_to_uniform_decisions(p1);
  const double tv2 = tv_to_uniform_decisions(p2);
  const bool pass = trace.final_exploitability <= 1e-3 && tv1 <= 1e-3 &&
                    tv2 <= 1e-3 && elapsed < 5.0;
  report(1, pass,
         "hpsro team_rps exploitability " + fmt(trace.final_exploitability) +
             ", decision TV " + fmt(std::max(tv1, tv2)) + ", " +
             fmt(elapsed) + " s");
}

// --- criterion 2: the Team PSRO Rock trap --------------------------------

void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig config;
  config.algorithm = Algorithm::kTeamPsro;
  config.seed = 0;
  config.team_psro_rock_init = true;
  const RunTrace trace = run(make_team_rps(), config);
  const double elapsed = seconds_since(start);

  bool paper_free = true;
  for (const IterationRecord& it : trace.iterations) {
    for (const PolicyRecord& p : it.appended) {
      if (p.kind != "shared") paper_free = false;
      // Shared (x, 1-x) plays Paper with probability x(1-x).
      const double x = p.values.empty() ? 0.0 : p.values[0];
      if (x * (1.0 - x) > 0.5) paper_free = false;
    }
  }
  const bool pass = paper_free &&
                    std::abs(trace.final_exploitability - 2.0) <= 1e-6 &&
                    elapsed < 5.0;
  report(2, pass,
         "team_psro rock-init exploitability " + fmt(trace.final_exploitability) +
             ", Paper stays out of the population, " + fmt(elapsed) + " s");
}

// --- criterion 3: H-PSRO on the heterogeneous matrix game ----------------

void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig config;
  config.algorithm = Algorithm::kHpsro;
  config.seed = 0;
  const RunTrace trace = run(make_hetero_matrix_game(), config);
  const double elapsed = seconds_since(start);
  const auto [p1, p2] = induced_joint_pair(trace, trace.total_iterations);
  const std::vector<double> want1 = {0.6, 0.4, 0.0, 0.0};
  const std::vector<double> want2 = {0.4, 0.0, 0.6, 0.0};
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    worst = std::max(worst, std::abs(p1.probs()[k] - want1[k]));
    worst = std::max(worst, std::abs(p2.probs()[k] - want2[k]));
  }
  const bool pass =
      trace.final_exploitability < 1e-6 && worst <= 1e-3 && elapsed < 5.0;
  report(3, pass,
         "hpsro hetero_matrix exploitability " + fmt(trace.final_exploitability) +
             ", mixture deviation " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// --- criterion 4: Team PSRO on the heterogeneous matrix game -------------

int run_cli(const std::string& args, std::string* stdout_text) {
  const fs::path dir = fs::temp_directory_path() / "teamgame_acceptance";
  fs::create_directories(dir);
  const fs::path out_path = dir / "stdout.txt";
  const std::string command =
      std::string(TEAMGAME_CLI_PATH) + " " + args + " >" + out_path.string() +
      " 2>" + (dir / "stderr.txt").string();
  const int status = std::system(command.c_str());
  std::ifstream in(out_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  *stdout_text = buffer.str();
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_4() {
  const TeamGame hetero = make_hetero_matrix_game();
  const JointPolicy opp = JointPolicy::pure(2, 4, 0);
  const SharedBestResponse br = shared_bro(hetero, 1, opp, BroConfig{});
  const bool bro_ok = std::abs(br.policy.probs()[0] - 0.9) <= 1e-6 &&
                      std::abs(br.value - 1.05) <= 1e-9;

  RunConfig config;
  config.algorithm = Algorithm::kTeamPsro;
  config.seed = 0;
  const double end_to_end = run(hetero, config).final_exploitability;
  const bool band_ok = end_to_end >= 2.4 && end_to_end <= 3.5;

  const fs::path dir = fs::temp_directory_path() / "teamgame_acceptance";
  fs::create_directories(dir);
  const fs::path p1 = dir / "stuck1.pol";
  const fs::path p2 = dir / "stuck2.pol";
  {
    std::ofstream(p1) << serialize_policy(to_joint(SharedPolicy(1, {0.9, 0.1}), hetero));
    std::ofstream(p2) << serialize_policy(JointPolicy::pure(2, 4, 0));
  }
  std::string output;
  const int code = run_cli(
      "eval --game hetero_matrix --p1 " + p1.string() + " --p2 " + p2.string(),
      &output);
  double printed = std::nan("");
  const std::size_t pos = output.find("exploitability ");
  if (pos != std::string::npos) printed = std::stod(output.substr(pos + 15));
  const bool eval_ok = code == 0 && std::abs(printed - 2.95) <= 1e-9;

  report(4, bro_ok && band_ok && eval_ok,
         "shared BRO x " + fmt(br.policy.probs()[0]) + " value " + fmt(br.value) +
             ", end-to-end exploitability " + fmt(end_to_end) +
             ", eval prints " + fmt(printed));
}

// --- criterion 5: sequential vs shared oracle dominance ------------------

void criterion_5() {
  SplitMix64 rng(20240501);
  const BroConfig config;
  int holds = 0;
  for (int t = 0; t < 200; ++t) {
    const int players = 2 + static_cast<int>(rng.next_below(2));
    const int actions = 2 + static_cast<int>(rng.next_below(2));
    const TeamGame g = random_team_game(std::vector<int>(players, actions),
                                        {2, 2}, {-3.0, 3.0}, rng.next());
    const JointPolicy opp = testutil::random_joint(rng, 2, 4);
    const double seq = sequential_bro(g, 1, opp, config).value;
    const double shared = shared_bro(g, 1, opp, config).value;
    if (seq >= shared - 1e-9) ++holds;
  }

  const TeamGame rps = make_team_rps();
  const JointPolicy rock = JointPolicy::pure(2, 4, 0);
  const double margin = sequential_bro(rps, 1, rock, config).value -
                        shared_bro(rps, 1, rock, config).value;

  report(5, holds == 200 && margin > 0.1,
         "dominance holds " + std::to_string(holds) +
             "/200, strict builtin margin " + fmt(margin));
}

// --- criterion 6: advantage decomposition + monotone ascent --------------

void criterion_6() {
  SplitMix64 rng(20240502);
  bool decomposition_ok = true;
  bool monotone_ok = true;
  for (int t = 0; t < 200; ++t) {
    const int players = 1 + static_cast<int>(rng.next_below(3));
    std::vector<int> counts(players);
    for (int& c : counts) c = 2 + static_cast<int>(rng.next_below(3));
    const TeamGame g =
        random_team_game(counts, {2, 2}, {-5.0, 5.0}, rng.next());
    const ProductPolicy base = testutil::random_product(rng, 1, counts);
    const JointPolicy opp = testutil::random_joint(rng, 2, 4);

    std::vector<int> order(players);
    for (int i = 0; i < players; ++i) order[i] = i;
    do {
      std::vector<int> agents, actions;
      for (int l = 0; l < players; ++l) {
        agents.push_back(order[l]);
        actions.push_back(static_cast<int>(rng.next_below(counts[order[l]])));
        const double lhs = multiagent_advantage(g, base, opp, agents, actions);
        double rhs = 0.0;
        for (std::size_t m = 1; m <= agents.size(); ++m) {
          rhs += testutil::oracle_conditioned_value(
                     g, 1, base.per_player(),
                     {agents.begin(), agents.begin() + m},
                     {actions.begin(), actions.begin() + m}, opp.probs()) -
                 testutil::oracle_conditioned_value(
                     g, 1, base.per_player(),
                     {agents.begin(), agents.begin() + m - 1},
                     {actions.begin(), actions.begin() + m - 1}, opp.probs());
        }
        if (std::abs(lhs - rhs) > 1e-10) decomposition_ok = false;
      }
    } while (std::next_permutation(order.begin(), order.end()));

    BroConfig ascent;
    ascent.exact_mode_threshold = 0;
    ascent.permutation_seed = rng.next();
    SequentialBroStats stats;
    sequential_bro(g, 1, opp, ascent, &stats);
    for (const auto& restart : stats.update_values) {
      for (std::size_t k = 1; k < restart.size(); ++k) {
        if (restart[k] < restart[k - 1] - 1e-12) monotone_ok = false;
      }
    }
  }
  report(6, decomposition_ok && monotone_ok,
         std::string("decomposition within 1e-10 on 200 instances, ascent ") +
             (monotone_ok ? "monotone" : "not monotone"));
}

// --- criterion 7: meta-solver certificate + ground-truth oracle ----------

void criterion_7() {
  SplitMix64 rng(20240503);
  double worst_gap = 0.0;
  double worst_eps = 0.0;
  bool solver_ok = true;
  for (int t = 0; t < 100; ++t) {
    const int rows = 1 + static_cast<int>(rng.next_below(8));
    const int cols = 1 + static_cast<int>(rng.next_below(8));
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (auto& row : m)
      for (double& v : row) v = rng.uniform(-10.0, 10.0);
    ZeroSumSolution s;
    try {
      s = solve_zero_sum_matrix(m);
    } catch (const Error&) {
      solver_ok = false;
      continue;
    }
    double best_row = -1e300, worst_col = 1e300;
    for (int i = 0; i < rows; ++i) {
      double v = 0.0;
      for (int j = 0; j < cols; ++j) v += m[i][j] * s.col_strategy[j];
      best_row = std::max(best_row, v);
    }
    for (int j = 0; j < cols; ++j) {
      double v = 0.0;
      for (int i = 0; i < rows; ++i) v += m[i][j] * s.row_strategy[i];
      worst_col = std::min(worst_col, v);
    }
    worst_gap = std::max(worst_gap, std::abs(best_row - worst_col));
    worst_eps = std::max(worst_eps, best_row - s.value);
    worst_eps = std::max(worst_eps, s.value - worst_col);
  }

  double worst_expl = 0.0;
  for (const TeamGame& g : {make_team_rps(), make_hetero_matrix_game()}) {
    const FullGameSolution s = solve_full_tmecor(g);
    worst_expl = std::max(worst_expl, exploitability(g, s.p1, s.p2));
  }
  for (int t = 0; t < 50; ++t) {
    const TeamGame g = random_team_game(
        {2, static_cast<int>(2 + rng.next_below(2))},
        {static_cast<int>(2 + rng.next_below(3)), 2}, {-5.0, 5.0}, rng.next());
    const FullGameSolution s = solve_full_tmecor(g);
    worst_expl = std::max(worst_expl, exploitability(g, s.p1, s.p2));
  }

  report(7,
         solver_ok && worst_gap <= 1e-9 && worst_eps <= 1e-8 &&
             worst_expl <= 1e-8,
         "duality gap " + fmt(worst_gap) + ", support eps " + fmt(worst_eps) +
             ", oracle exploitability " + fmt(worst_expl));
}

// --- criterion 8: qualitative learning dynamics --------------------------

void criterion_8() {
  RunConfig sp_config;
  sp_config.algorithm = Algorithm::kSelfPlay;
  sp_config.seed = 0;
  sp_config.max_iterations = 12;
  const RunTrace sp = run(make_team_rps(), sp_config);
  bool seen[3] = {false, false, false};
  for (const IterationRecord& it : sp.iterations) {
    const std::array<double, 3> d = project_team_rps(JointPolicy(1, it.traj1));
    int argmax = 0;
    for (int k = 1; k < 3; ++k)
      if (d[k] > d[argmax]) argmax = k;
    seen[argmax] = true;
  }
  const bool sp_ok = seen[0] && seen[1] && seen[2];

  RunConfig fsp_config;
  fsp_config.algorithm = Algorithm::kFsp;
  fsp_config.seed = 0;
  fsp_config.max_iterations = 200;
  const RunTrace fsp = run(make_team_rps(), fsp_config);
  bool fsp_ok = true;
  double worst_rise = 0.0;
  for (int team = 1; team <= 2; ++team) {
    double prev = -1.0;
    for (int t = 150; t < 200; ++t) {
      const IterationRecord& it = fsp.iterations[t];
      const double tv = tv_to_uniform_decisions(
          JointPolicy(team, team == 1 ? it.traj1 : it.traj2));
      if (prev >= 0.0) {
        worst_rise = std::max(worst_rise, tv - prev);
        if (tv > prev + 1e-3) fsp_ok = false;
      }
      prev = tv;
    }
  }
  report(8, sp_ok && fsp_ok,
         std::string("self play ") + (sp_ok ? "cycles all three decisions" : "misses a decision") +
             "; fsp averaged TV worst consecutive rise " + fmt(worst_rise) +
             " (tolerance 1e-3)");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf(
      "INFO criterion 9: large-scale environment results are out of scope by "
      "design; covered by the property suites of criteria 5-7\n");
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
