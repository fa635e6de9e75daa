#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "teamgames/builtin.hpp"
#include "teamgames/policy.hpp"
#include "teamgames/trace.hpp"

namespace fs = std::filesystem;
using namespace teamgames;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "teamgame_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

CliResult run_cli(const std::string& args) {
  const fs::path out_path = scratch_dir() / "stdout.txt";
  const fs::path err_path = scratch_dir() / "stderr.txt";
  const std::string command = std::string(TEAMGAME_CLI_PATH) + " " + args + " >" +
                              out_path.string() + " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

double printed_value(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find(key + " ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("timestamp ", 0) == 0) continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("run converges and reports its result") {
  const fs::path trace = scratch_dir() / "rps.trace";
  const CliResult r = run_cli("run --game team_rps --algo hpsro --iters 30 --seed 0 --out " +
                              trace.string());
  CHECK(r.exit_code == 0);
  CHECK(printed_value(r.out, "final_exploitability") < 1e-3);
  CHECK(read_file(trace).rfind("trace v1\n", 0) == 0);
}

TEST_CASE("run team_psro lands in the trap band") {
  const fs::path trace = scratch_dir() / "trap.trace";
  const CliResult r = run_cli(
      "run --game hetero_matrix --algo team_psro --iters 50 --seed 0 --out " +
      trace.string());
  CHECK(r.exit_code == 0);
  const double e = printed_value(r.out, "final_exploitability");
  CHECK(e >= 2.4);
  CHECK(e <= 3.5);
}

TEST_CASE("run rejects an unknown algorithm with exit 2") {
  const CliResult r = run_cli("run --game team_rps --algo bogus --seed 0 --out " +
                              (scratch_dir() / "x.trace").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:config:") != std::string::npos);
  CHECK(r.err.find("algo") != std::string::npos);
}

TEST_CASE("run requires an explicit seed") {
  const CliResult r = run_cli("run --game team_rps --algo hpsro --out " +
                              (scratch_dir() / "x.trace").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("seed") != std::string::npos);
}

TEST_CASE("identical command lines write identical traces modulo timestamp") {
  const fs::path a = scratch_dir() / "a.trace";
  const fs::path b = scratch_dir() / "b.trace";
  const std::string tail = "run --game team_rps --algo fsp --iters 20 --seed 5 --out ";
  CHECK(run_cli(tail + a.string()).exit_code == 0);
  CHECK(run_cli(tail + b.string()).exit_code == 0);
  CHECK(strip_timestamp(read_file(a)) == strip_timestamp(read_file(b)));
}

TEST_CASE("eval reports best responses and exploitability") {
  const fs::path p1 = scratch_dir() / "p1.pol";
  const fs::path p2 = scratch_dir() / "p2.pol";

  SUBCASE("uniform decisions on team RPS evaluate to zero") {
    write_file(p1, serialize_policy(JointPolicy(1, {1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6})));
    write_file(p2, serialize_policy(JointPolicy(2, {1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6})));
    const CliResult r = run_cli("eval --game team_rps --p1 " + p1.string() +
                                " --p2 " + p2.string());
    CHECK(r.exit_code == 0);
    CHECK(std::abs(printed_value(r.out, "exploitability")) <= 1e-12);
  }

  SUBCASE("the stuck pair reproduces its known exploitability") {
    const TeamGame hetero = make_hetero_matrix_game();
    write_file(p1, serialize_policy(to_joint(SharedPolicy(1, {0.9, 0.1}), hetero)));
    write_file(p2, serialize_policy(JointPolicy::pure(2, 4, 0)));
    const CliResult r = run_cli("eval --game hetero_matrix --p1 " + p1.string() +
                                " --p2 " + p2.string());
    CHECK(r.exit_code == 0);
    CHECK(std::abs(printed_value(r.out, "exploitability") - 2.95) <= 1e-9);
    CHECK(std::abs(printed_value(r.out, "br1_value") - 4.0) <= 1e-9);
    CHECK(std::abs(printed_value(r.out, "br2_value") - -1.05) <= 1e-9);
  }

  SUBCASE("a mismatched policy length exits 3") {
    write_file(p1, serialize_policy(JointPolicy(1, {0.5, 0.5})));
    write_file(p2, serialize_policy(JointPolicy(2, {0.25, 0.25, 0.25, 0.25})));
    const CliResult r = run_cli("eval --game team_rps --p1 " + p1.string() +
                                " --p2 " + p2.string());
    CHECK(r.exit_code == 3);
    CHECK(r.err.rfind("error:", 0) == 0);
  }
}

TEST_CASE("value solves the builtin games") {
  const CliResult hetero = run_cli("value --game hetero_matrix");
  CHECK(hetero.exit_code == 0);
  CHECK(std::abs(printed_value(hetero.out, "value") - 2.2) <= 1e-9);

  const CliResult rps = run_cli("value --game team_rps");
  CHECK(rps.exit_code == 0);
  CHECK(std::abs(printed_value(rps.out, "value")) <= 1e-9);
}

TEST_CASE("value enforces the size guard with exit 4") {
  const fs::path big = scratch_dir() / "big.game";
  const std::string counts = "2,2,2,2,2,2,2,2,2,2";
  const CliResult gen = run_cli("gen --team1 " + counts + " --team2 " + counts +
                                " --range 0,1 --seed 1 --out " + big.string());
  REQUIRE(gen.exit_code == 0);
  const CliResult r = run_cli("value --game " + big.string());
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("error:size:") != std::string::npos);
}

TEST_CASE("gen then validate round trips") {
  const fs::path path = scratch_dir() / "random.game";
  const CliResult gen = run_cli("gen --team1 2,3 --team2 2,2 --range -1,1 --seed 77 --out " +
                                path.string());
  CHECK(gen.exit_code == 0);

  const CliResult ok = run_cli("validate --game " + path.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("ok") != std::string::npos);
  CHECK(ok.out.find("team1_joint_actions 6") != std::string::npos);

  // Deterministic generation: same seed, same file.
  const fs::path again = scratch_dir() / "random2.game";
  REQUIRE(run_cli("gen --team1 2,3 --team2 2,2 --range -1,1 --seed 77 --out " +
                  again.string())
              .exit_code == 0);
  CHECK(read_file(path) == read_file(again));
}

TEST_CASE("validate reports parse errors with position and exit 3") {
  const fs::path path = scratch_dir() / "broken.game";
  write_file(path, "teamgame v1\nteam1 a b\nteam2 a b\npayoffs\n0 zzz\n0 0\n");
  const CliResult r = run_cli("validate --game " + path.string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("error:parse:") != std::string::npos);
  CHECK(r.err.find("5:3") != std::string::npos);
}
