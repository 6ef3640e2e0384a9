#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"

using namespace qsurv::cli;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "qsurv_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunResult run_cli(const std::string& args, const fs::path& out_file) {
  const std::string cmd = std::string(QSURV_CLI_PATH) + " " + args + " --out " +
                          out_file.string() + " 2>/dev/null";
  RunResult r;
  const int status = std::system(cmd.c_str());
  r.exit_code = WEXITSTATUS(status);
  if (fs::exists(out_file)) r.output = slurp(out_file);
  return r;
}

}  // namespace

TEST_CASE("config parsing: defaults, unknown keys, bad values") {
  const RunConfig cfg = parse_run_config(R"({"packet":{"a":2.0,"p0":0.5}})");
  CHECK(cfg.packet.a == 2.0);
  CHECK(cfg.packet.hbar == 1.0);
  CHECK(cfg.output.precision == 15);
  CHECK_FALSE(cfg.distribution().has_value());

  CHECK_THROWS_AS(parse_run_config(R"({"packte":{}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"packet":{"width":1}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"packet":{"a":-1}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"survival":{"kind":"weibull"}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"survival":{"kind":"gamma","tau":0.1,"s":0.5}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"survival":{"kind":"exponential","tau":0.1,"s":2}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"output":{"format":"xml"}})"), ConfigError);

  const RunConfig gam = parse_run_config(R"({"survival":{"kind":"gamma","tau":0.1,"s":2.5}})");
  REQUIRE(gam.distribution().has_value());
  CHECK(gam.distribution()->shape() == 2.5);
}

TEST_CASE("report rendering: csv and json carry the same cells") {
  Report r;
  Section& s = r.add_section("demo", {"k", "v"});
  s.rows.push_back({std::string("alpha"), 0.125});
  r.add_check("unit", 1.0 + 1e-13, 1.0, 1e-12);
  const std::string csv = to_csv(r, 15);
  CHECK(csv.find("# demo\n") != std::string::npos);
  CHECK(csv.find("alpha,0.125\n") != std::string::npos);
  CHECK(csv.find("unit,") != std::string::npos);
  CHECK(r.all_checks_passed());
  const std::string json = to_json(r, 15);
  CHECK(json.find("\"alpha\", 0.125") != std::string::npos);
  CHECK(json.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("fig1: byte determinism and zero-crossing column") {
  const fs::path dir = temp_dir();
  const RunResult a = run_cli("fig1", dir / "fig1_a.csv");
  const RunResult b = run_cli("fig1", dir / "fig1_b.csv");
  CHECK(a.exit_code == 0);
  REQUIRE(!a.output.empty());
  CHECK(a.output == b.output);

  // Root of the eps0 = 0.2 profile at xi = -1/sqrt(0.4); the sampled grid
  // brackets it with a sign change.
  std::istringstream lines(a.output);
  std::string line;
  double prev = 1.0;
  bool crossed = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    const auto last_comma = line.rfind(',');
    const double w02 = std::stod(line.substr(last_comma + 1));
    if (prev < 0.0 && w02 >= 0.0) crossed = true;
    prev = w02;
  }
  CHECK(crossed);
}

TEST_CASE("survival: momentum block identical across ideal and non-ideal runs") {
  const fs::path dir = temp_dir();
  spit(dir / "ideal.json", R"({"survival":{"kind":"exponential","tau":0}})");
  spit(dir / "nonideal.json", R"({"survival":{"kind":"gamma","tau":0.01,"s":2}})");

  const RunResult ideal = run_cli("survival --config " + (dir / "ideal.json").string(),
                                  dir / "ideal.csv");
  const RunResult nonideal = run_cli("survival --config " + (dir / "nonideal.json").string(),
                                     dir / "nonideal.csv");
  CHECK(ideal.exit_code == 0);
  CHECK(nonideal.exit_code == 0);

  const auto momentum_block = [](const std::string& text) {
    const auto start = text.find("# momentum_density");
    const auto end = text.find("# checks");
    REQUIRE(start != std::string::npos);
    return text.substr(start, end - start);
  };
  CHECK(momentum_block(ideal.output) == momentum_block(nonideal.output));
  CHECK(!momentum_block(ideal.output).empty());
}

TEST_CASE("survival: tau = 0 gives the hbar/2 product row") {
  const fs::path dir = temp_dir();
  spit(dir / "ideal2.json", R"({"packet":{"a":1.0,"p0":1.0}})");
  const RunResult r = run_cli("survival --config " + (dir / "ideal2.json").string(),
                              dir / "ideal2.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("product,0.5\n") != std::string::npos);
  CHECK(r.output.find("kind,ideal") != std::string::npos);
}

TEST_CASE("measure: equal superposition table and exit codes") {
  const fs::path dir = temp_dir();
  spit(dir / "cfg.json", R"({})");
  spit(dir / "obs.json",
       R"({"eigenvalues":[1,-1],)"
       R"("blocks":[[[[1,0],[0,0]]],[[[0,0],[1,0]]]],)"
       R"("rho":[[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]})");

  const RunResult res = run_cli("measure --config " + (dir / "cfg.json").string() +
                                    " --observable " + (dir / "obs.json").string(),
                                dir / "measure.csv");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("0,1,1,0.5,0.5") != std::string::npos);
  CHECK(res.output.find("1,-1,1,0.5,0.5") != std::string::npos);

  // Ideal and non-ideal columns coincide for a tau = 0 config: the
  // probability rows end with two equal columns, checked above.

  // Unknown config key: exit 2, fixture parse failure: exit 2.
  spit(dir / "bad.json", R"({"unknown":1})");
  const RunResult bad = run_cli("measure --config " + (dir / "bad.json").string() +
                                    " --observable " + (dir / "obs.json").string(),
                                dir / "bad.csv");
  CHECK(bad.exit_code == 2);
  spit(dir / "badobs.json", R"({"eigenvalues":[1]})");
  const RunResult bad2 = run_cli("measure --config " + (dir / "cfg.json").string() +
                                     " --observable " + (dir / "badobs.json").string(),
                                 dir / "badobs.csv");
  CHECK(bad2.exit_code == 2);
}

TEST_CASE("asymptotics: Q column approaches 1 and rel errors shrink") {
  const fs::path dir = temp_dir();
  spit(dir / "cfg.json", R"({"survival":{"kind":"gamma","tau":0.05,"s":2}})");
  const RunResult res = run_cli("asymptotics --config " + (dir / "cfg.json").string() +
                                    " --sigma 9 --sigma 16 --sigma 25",
                                dir / "asym.csv");
  CHECK(res.exit_code == 0);

  // Parse the normalization section: sigma, Q_exact, Q_asymptotic, rel_err...
  std::istringstream lines(res.output);
  std::string line;
  bool in_norm = false;
  std::vector<double> q_exact, rel;
  while (std::getline(lines, line)) {
    if (line.rfind("# ", 0) == 0) {
      in_norm = line == "# normalization";
      continue;
    }
    if (!in_norm || line.rfind("sigma", 0) == 0) continue;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    q_exact.push_back(vals[1]);
    rel.push_back(vals[3]);
  }
  REQUIRE(q_exact.size() == 3);
  CHECK(std::abs(q_exact[0] - 1.0) > std::abs(q_exact[1] - 1.0));
  CHECK(std::abs(q_exact[1] - 1.0) > std::abs(q_exact[2] - 1.0));
  CHECK(std::abs(q_exact[2] - 1.0) < 1e-12);
  CHECK(rel[0] > rel[1]);  // leading-order error shrinks ~1/sigma
}

TEST_CASE("measure: repo fixture with degenerate blocks sums to one in the footer") {
  const fs::path dir = temp_dir();
  const std::string fixtures = QSURV_FIXTURES_DIR;
  const RunResult res = run_cli("measure --config " + fixtures + "/config_survival.json" +
                                    " --observable " + fixtures + "/observable_degenerate4.json",
                                dir / "deg4.csv");
  CHECK(res.exit_code == 0);
  // Footer rows carry the probability sums at the 1e-12 gate.
  CHECK(res.output.find("sum_P_ideal,1,1,1e-12,1") != std::string::npos);
  CHECK(res.output.find("sum_P_nonideal,") != std::string::npos);
  // Non-ideal columns deviate from ideal for this non-commuting Hamiltonian.
  CHECK(res.output.find("0,1,2,0.5,0.5\n") == std::string::npos);
}

TEST_CASE("survival: identical config gives identical bytes") {
  const fs::path dir = temp_dir();
  const std::string fixtures = QSURV_FIXTURES_DIR;
  const RunResult a =
      run_cli("survival --config " + fixtures + "/config_survival.json", dir / "det_a.csv");
  const RunResult b =
      run_cli("survival --config " + fixtures + "/config_survival.json", dir / "det_b.csv");
  CHECK(a.exit_code == 0);
  REQUIRE(!a.output.empty());
  CHECK(a.output == b.output);
}

TEST_CASE("survival: json format is emitted on request") {
  const fs::path dir = temp_dir();
  const std::string fixtures = QSURV_FIXTURES_DIR;
  const RunResult res = run_cli(
      "survival --config " + fixtures + "/config_ideal.json --format json", dir / "s.json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("{", 0) == 0);
  CHECK(res.output.find("\"sections\"") != std::string::npos);
  CHECK(res.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("scattering-demo: free model gives exact identities") {
  const fs::path dir = temp_dir();
  spit(dir / "free.json",
       R"({"h0":[[[0,0],[0,0]],[[0,0],[1,0]]],"hi":[[[0,0],[0,0]],[[0,0],[0,0]]]})");
  const RunResult res =
      run_cli("scattering-demo --model " + (dir / "free.json").string(), dir / "free.csv");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("# unitarity") != std::string::npos);
  CHECK(res.output.find("N_resolvent") != std::string::npos);

  std::istringstream lines(res.output);
  std::string line;
  bool in_norm = false;
  while (std::getline(lines, line)) {
    if (line.rfind("# ", 0) == 0) {
      in_norm = line == "# normalization";
      continue;
    }
    if (!in_norm || line.rfind("lambda", 0) == 0 || line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Non-Hermitian input is a config error.
  spit(dir / "skew.json",
       R"({"h0":[[[0,0],[1,0]],[[0,0],[0,0]]],"hi":[[[0,0],[0,0]],[[0,0],[0,0]]]})");
  const RunResult bad =
      run_cli("scattering-demo --model " + (dir / "skew.json").string(), dir / "skew.csv");
  CHECK(bad.exit_code == 2);
}
