#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hjbnav/cli.hpp"
#include "hjbnav/config.hpp"
#include "hjbnav/field_io.hpp"
#include "hjbnav/pde.hpp"
#include "hjbnav/scenario.hpp"

using namespace hjbnav;

namespace {

namespace fs = std::filesystem;

const fs::path kConfigDir = fs::path(__FILE__).parent_path().parent_path() / "configs";

fs::path temp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "hjbnav_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = 0;
  std::string out;
};

// Runs the CLI in-process with stdout redirected to a scratch file.
CliResult run_cli_capture(std::vector<std::string> args) {
  std::vector<const char*> argv{"hjbnav"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  const fs::path capture = temp_dir("stdout") / "out.txt";
  std::fflush(stdout);
  const int saved_fd = dup(fileno(stdout));
  REQUIRE(freopen(capture.string().c_str(), "w", stdout) != nullptr);
  const int code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::fflush(stdout);
  dup2(saved_fd, fileno(stdout));
  close(saved_fd);
  clearerr(stdout);
  return {code, slurp(capture)};
}

ScenarioConfig full_config() {
  ScenarioConfig cfg;
  cfg.scenario_name = "corridor";
  cfg.scenario_params = {{"h", 0.25}, {"narrow_width", 2.0}};
  cfg.variant = PdeVariant::FullLinearHJB;
  cfg.alpha = 0.5;
  cfg.lambda = 0.7;
  cfg.sigma_t = {2.0, 3.0};
  cfg.drift = {0.1, -0.2};
  cfg.obstacle_phi = 12.0;
  cfg.goal_phi = 0.25;
  cfg.tol = 1e-9;
  cfg.max_sweeps = 123456;
  cfg.relaxation = 1.55;
  cfg.dt = 0.003;
  cfg.rollout_n = 777;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("parse_config: maze min-time parameters") {
  const ScenarioConfig cfg = load_config((kConfigDir / "maze-mintime.cfg").string());
  CHECK(cfg.scenario_name == "maze");
  CHECK(cfg.variant == PdeVariant::AugmentedNavigation);
  CHECK(cfg.alpha == 100.0);
  CHECK(cfg.lambda == 0.04);
  CHECK(cfg.sigma_t == std::vector<double>{2.0});
  CHECK(cfg.obstacle_phi == 20.0);
  CHECK(cfg.goal_phi == 0.0);
}

TEST_CASE("parse_config: lambda is always required") {
  const std::string text =
      "[scenario]\nname = maze\n[pde]\nvariant = laplace\nsigma_t = 2\n";
  CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("lambda required"),
                       std::runtime_error);
}

TEST_CASE("parse_config: variant-dependent requirements") {
  CHECK_THROWS_WITH_AS(
      parse_config("[scenario]\nname = maze\n[pde]\nvariant = augmented\nlambda = 1\nsigma_t = 2\n"),
      doctest::Contains("alpha required"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_config("[scenario]\nname = maze\n[pde]\nvariant = hjb\nlambda = 1\nsigma_t = 2\n"),
      doctest::Contains("drift required"), std::runtime_error);
}

TEST_CASE("parse_config: errors cite the offending line") {
  const std::string unknown =
      "[scenario]\nname = maze\n[pde]\nvariant = laplace\nwibble = 3\nlambda = 1\nsigma_t = 2\n";
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("line 5"), std::runtime_error);
  const std::string bad_number =
      "[scenario]\nname = maze\n[pde]\nvariant = laplace\nlambda = abc\nsigma_t = 2\n";
  CHECK_THROWS_WITH_AS(parse_config(bad_number),
                       doctest::Contains("line 5: expected a number for 'lambda'"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_config("x = 1\n"), doctest::Contains("line 1"), std::runtime_error);
}

TEST_CASE("config round trip: parse(serialize(cfg)) == cfg") {
  const ScenarioConfig cfg = full_config();
  const ScenarioConfig back = parse_config(serialize_config(cfg));
  CHECK(back == cfg);

  // and one loaded from disk
  const ScenarioConfig grasp = load_config((kConfigDir / "grasp.cfg").string());
  CHECK(parse_config(serialize_config(grasp)) == grasp);
}

TEST_CASE("build_problem: sigma broadcast and drift checks") {
  const ScenarioConfig cfg = load_config((kConfigDir / "grasp.cfg").string());
  const CSpaceMap map = build_map(cfg);
  CHECK(map.grid.ndim() == 3);
  const PdeProblem problem = build_problem(cfg, map);
  CHECK(problem.sigma_t == std::vector<double>{5.0, 5.0, 5.0});
  CHECK(problem.lambda == 0.1);
  CHECK(effective_dt(cfg, problem) == 0.0125);
}

TEST_CASE("export_field: row-major CSV layout") {
  CSpaceMap map;
  map.grid = GridSpec({Axis{0.0, 2.0, 1.0, false}, Axis{0.0, 2.0, 1.0, false}});
  map.cells.assign(4, CellClass::Free);
  map.phi.assign(4, 0.0);
  map.name = "tiny";
  const std::vector<double> values{0.0, 1.0, 2.0, 3.0};
  const fs::path dir = temp_dir("csv_layout");
  export_field_csv(map, values, FieldKind::Desirability, (dir / "f.csv").string());
  const std::string text = slurp(dir / "f.csv");
  CHECK(text.find("0,1\n") != std::string::npos);
  CHECK(text.find("2,3\n") != std::string::npos);
  CHECK(text.find("# field psi") != std::string::npos);
}

TEST_CASE("export_field: CSV round trip is bit exact") {
  const CSpaceMap map = build_scenario_map(builtin_scenario("maze", {{"h", 0.5}}), 20.0, 0.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(1e-300, 1.0);
  std::vector<double> values(map.grid.total_cells());
  for (double& v : values) v = u(rng) * std::pow(10.0, static_cast<int>(u(rng) * 30) - 15);
  const fs::path dir = temp_dir("csv_roundtrip");
  export_field_csv(map, values, FieldKind::Value, (dir / "f.csv").string());
  const FieldData back = read_field_csv((dir / "f.csv").string());
  CHECK(back.kind == "value");
  CHECK(back.grid == map.grid);
  REQUIRE(back.values.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(back.values[i] == values[i]);
}

TEST_CASE("export_field: constant PGM is uniform gray with black boundary") {
  const CSpaceMap map = build_scenario_map(builtin_scenario("empty-room", {{"h", 0.5}}), 1.0, 1.0);
  std::vector<double> values(map.grid.total_cells(), 3.3);
  const fs::path dir = temp_dir("pgm");
  export_field_pgm(map, values, (dir / "f.pgm").string());
  const std::string pgm = slurp(dir / "f.pgm");
  const std::string header = "P5\n20 20\n255\n";
  REQUIRE(pgm.substr(0, header.size()) == header);
  const std::string pixels = pgm.substr(header.size());
  REQUIRE(pixels.size() == 400);
  for (int row = 0; row < 20; ++row) {
    for (int col = 0; col < 20; ++col) {
      const unsigned char pix = static_cast<unsigned char>(pixels[row * 20 + col]);
      const bool ring = row == 0 || row == 19 || col == 0 || col == 19;
      const bool goal = (col == 9 || col == 10) && (row == 9 || row == 10);
      if (ring || goal) {
        CHECK(pix == 0);  // non-Free cells render black
      } else {
        CHECK(pix == 128);
      }
    }
  }
}

TEST_CASE("take_slice extracts a planar layer of a 3D field") {
  const CSpaceMap map = build_scenario_map(builtin_scenario("grasp"), 1.0, 0.0);
  std::vector<double> values(map.grid.total_cells());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(map.grid.unflat(i)[2]);  // theta layer id
  }
  const SlicedField sl = take_slice(map, values, SliceSpec{2, 0.0});
  CHECK(sl.map.grid.ndim() == 2);
  CHECK(sl.map.grid.cells(0) == 24);
  CHECK(sl.map.grid.cells(1) == 24);
  REQUIRE(sl.values.size() == 576);
  for (double v : sl.values) CHECK(v == 0.0);  // theta = 0 is layer 0
}

TEST_CASE("cli: analytic prints oracle values") {
  const CliResult k0 = run_cli_capture({"analytic", "k0", "1.0"});
  CHECK(k0.code == 0);
  CHECK(k0.out == "0.4210244382\n");
  const CliResult lap = run_cli_capture({"analytic", "laplace2d", "2.0"});
  CHECK(lap.out == "-0.1103178001\n");
  const CliResult bad = run_cli_capture({"analytic", "k0"});
  CHECK(bad.code == 1);
}

TEST_CASE("cli: scenarios lists the built-ins") {
  const CliResult res = run_cli_capture({"scenarios"});
  CHECK(res.code == 0);
  for (const char* name : {"empty-room", "corridor", "maze", "grasp"}) {
    CHECK(res.out.find(name) != std::string::npos);
  }
}

TEST_CASE("cli: unknown subcommand exits 2") {
  const CliResult res = run_cli_capture({"frobnicate"});
  CHECK(res.code == 2);
}

TEST_CASE("cli: solve writes fields and a deterministic report") {
  const fs::path dir_a = temp_dir("solve_a");
  const fs::path dir_b = temp_dir("solve_b");
  const std::string cfg = (kConfigDir / "corridor.cfg").string();
  for (const fs::path& dir : {dir_a, dir_b}) {
    const CliResult res = run_cli_capture({"solve", "--config", cfg, "--narrow-width", "2.0",
                                           "--tol", "1e-8", "--out", dir.string()});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("solved corridor") != std::string::npos);
    for (const char* f : {"psi.csv", "value.csv", "psi.pgm", "value.pgm", "report.txt"}) {
      CHECK(fs::exists(dir / f));
    }
  }
  const std::string report = slurp(dir_a / "report.txt");
  CHECK(report.find("sweeps") != std::string::npos);
  CHECK(report.find("residual") != std::string::npos);
  // identical inputs give byte-identical outputs
  CHECK(slurp(dir_a / "psi.csv") == slurp(dir_b / "psi.csv"));
  CHECK(slurp(dir_a / "value.csv") == slurp(dir_b / "value.csv"));
  CHECK(slurp(dir_a / "report.txt") == slurp(dir_b / "report.txt"));
}

TEST_CASE("cli: path from an obstacle start fails with a message") {
  const std::string cfg = (kConfigDir / "maze.cfg").string();
  const CliResult res =
      run_cli_capture({"path", "--config", cfg, "--start", "(-2.5, 0.0)", "--tol", "1e-8"});
  CHECK(res.code == 1);  // start is inside the outer ring wall
}

TEST_CASE("cli: path reaches the goal from a free start") {
  const std::string cfg = (kConfigDir / "empty-room.cfg").string();
  const fs::path dir = temp_dir("path_run");
  const CliResult res = run_cli_capture(
      {"path", "--config", cfg, "--start", "(3.0, 3.0)", "--out", dir.string()});
  CHECK(res.code == 0);
  CHECK(res.out.find("outcome goal") != std::string::npos);
  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(csv.find("# t,x0,x1,u0,u1,cell") != std::string::npos);
  CHECK(csv.find("goal") != std::string::npos);
}

TEST_CASE("cli: rollout reports reproducible statistics") {
  const std::string cfg = (kConfigDir / "empty-room.cfg").string();
  const fs::path dir = temp_dir("rollout_run");
  const CliResult a = run_cli_capture({"rollout", "--config", cfg, "--start", "(2.0, 2.0)", "--n",
                                       "200", "--seed", "7", "--out", dir.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("p_hat") != std::string::npos);
  const std::string report = slurp(dir / "rollout.txt");
  CHECK(report.find("seed 7") != std::string::npos);
  const CliResult b = run_cli_capture({"rollout", "--config", cfg, "--start", "(2.0, 2.0)", "--n",
                                       "200", "--seed", "7"});
  // same stdout stats block
  CHECK(b.out == a.out);
}

TEST_CASE("cli: grasp solve exports a planar slice") {
  const fs::path dir = temp_dir("grasp_solve");
  const CliResult res = run_cli_capture({"solve", "--config", (kConfigDir / "grasp.cfg").string(),
                                         "--slice", "theta=0", "--out", dir.string()});
  REQUIRE(res.code == 0);
  for (const char* f : {"psi.csv", "value.csv", "psi_slice.csv", "value_slice.csv", "psi.pgm"}) {
    CHECK(fs::exists(dir / f));
  }
  const FieldData full = read_field_csv((dir / "value.csv").string());
  CHECK(full.grid.ndim() == 3);
  CHECK(full.values.size() == 24 * 24 * 18);
  const FieldData slice = read_field_csv((dir / "value_slice.csv").string());
  CHECK(slice.grid.ndim() == 2);
  CHECK(slice.values.size() == 24 * 24);
}

TEST_CASE("cli: fk-check prints the comparison table") {
  const CliResult res = run_cli_capture({"fk-check", "--config",
                                         (kConfigDir / "empty-room.cfg").string(), "--n", "500",
                                         "--probes", "3", "--tol", "1e-8"});
  CHECK(res.code == 0);
  CHECK(res.out.find("fdm") != std::string::npos);
  CHECK(res.out.find("worst |z|") != std::string::npos);
}

TEST_CASE("config: q_field loads a per-cell state cost for the hjb variant") {
  // write a q field over the maze grid, then reference it from a config
  const fs::path dir = temp_dir("q_field");
  const CSpaceMap map = build_scenario_map(builtin_scenario("maze", {{"h", 0.5}}), 20.0, 0.0);
  std::vector<double> q(map.grid.total_cells());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = static_cast<double>(i % 7);
  export_field_csv(map, q, FieldKind::Value, (dir / "q.csv").string());

  std::ostringstream cfg;
  cfg << "[scenario]\nname = maze\nh = 0.5\n[pde]\nvariant = hjb\nlambda = 1\nsigma_t = 2\n"
      << "drift = 0.1,0\nq_field = " << (dir / "q.csv").string() << "\n";
  const ScenarioConfig parsed = parse_config(cfg.str());
  const CSpaceMap map2 = build_map(parsed);
  const PdeProblem problem = build_problem(parsed, map2);
  REQUIRE(std::holds_alternative<std::vector<double>>(problem.state_cost));
  CHECK(std::get<std::vector<double>>(problem.state_cost) == q);
  CHECK(problem.drift.size() == map2.grid.total_cells());

  // mismatched grid is rejected
  ScenarioConfig bad = parsed;
  bad.scenario_params["h"] = 0.25;
  CHECK_THROWS(build_problem(bad, build_map(bad)));
}
