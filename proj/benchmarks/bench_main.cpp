#include <benchmark/benchmark.h>

#include <vector>

#include "teamgames/builtin.hpp"
#include "teamgames/engine.hpp"
#include "teamgames/evaluation.hpp"
#include "teamgames/meta.hpp"
#include "teamgames/oracles.hpp"
#include "teamgames/policy.hpp"
#include "teamgames/rng.hpp"

using namespace teamgames;

namespace {

std::vector<double> simplex(SplitMix64& rng, int n) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    x = rng.next_double() + 1e-9;
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

void BM_ExpectedPayoff(benchmark::State& state) {
  const int players = static_cast<int>(state.range(0));
  const std::vector<int> counts(players, 3);
  const TeamGame g = random_team_game(counts, counts, {-1.0, 1.0}, 1);
  SplitMix64 rng(2);
  const JointPolicy p1(1, simplex(rng, g.joint_action_count(1)));
  const JointPolicy p2(2, simplex(rng, g.joint_action_count(2)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_payoff(g, p1, p2));
  }
}
BENCHMARK(BM_ExpectedPayoff)->Arg(2)->Arg(4)->Arg(6);

void BM_SolveZeroSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(3);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (auto& row : m)
    for (double& v : row) v = rng.uniform(-5.0, 5.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_zero_sum_matrix(m));
  }
}
BENCHMARK(BM_SolveZeroSum)->Arg(4)->Arg(16)->Arg(64);

void BM_SequentialBro(benchmark::State& state) {
  const int players = static_cast<int>(state.range(0));
  const std::vector<int> counts(players, 3);
  const TeamGame g = random_team_game(counts, {3, 3}, {-1.0, 1.0}, 4);
  SplitMix64 rng(5);
  const JointPolicy opp(2, simplex(rng, 9));
  BroConfig config;
  config.exact_mode_threshold = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sequential_bro(g, 1, opp, config));
  }
}
BENCHMARK(BM_SequentialBro)->Arg(2)->Arg(4)->Arg(6);

void BM_HpsroTeamRps(benchmark::State& state) {
  const TeamGame g = make_team_rps();
  RunConfig config;
  config.algorithm = Algorithm::kHpsro;
  config.seed = 0;
  config.max_iterations = 30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(g, config));
  }
}
BENCHMARK(BM_HpsroTeamRps);

void BM_Exploitability(benchmark::State& state) {
  const int players = static_cast<int>(state.range(0));
  const std::vector<int> counts(players, 3);
  const TeamGame g = random_team_game(counts, counts, {-1.0, 1.0}, 6);
  SplitMix64 rng(7);
  const JointPolicy p1(1, simplex(rng, g.joint_action_count(1)));
  const JointPolicy p2(2, simplex(rng, g.joint_action_count(2)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exploitability(g, p1, p2));
  }
}
BENCHMARK(BM_Exploitability)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
