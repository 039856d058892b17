#include "hjbnav/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hjbnav/field_io.hpp"

namespace hjbnav {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

double parse_number(int line, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) fail(line, "expected a number for '" + key + "'");
    return v;
  } catch (const std::exception&) {
    fail(line, "expected a number for '" + key + "'");
  }
}

std::vector<double> parse_number_list(int line, const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::istringstream ls(value);
  std::string tok;
  while (std::getline(ls, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) fail(line, "expected a comma-separated number list for '" + key + "'");
    out.push_back(parse_number(line, key, tok));
  }
  if (out.empty()) fail(line, "expected a comma-separated number list for '" + key + "'");
  return out;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* variant_name(PdeVariant v) {
  switch (v) {
    case PdeVariant::FullLinearHJB: return "hjb";
    case PdeVariant::AugmentedNavigation: return "augmented";
    case PdeVariant::LaplaceNavigation: return "laplace";
  }
  return "?";
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  bool saw_variant = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "pde" && section != "penalties" &&
          section != "solver" && section != "rollout") {
        fail(line_no, "unknown section '" + section + "'");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");
    if (section.empty()) fail(line_no, "key outside of any [section]");

    if (section == "scenario") {
      if (key == "name") {
        cfg.scenario_name = value;
      } else if (key == "h" || key == "narrow_width") {
        cfg.scenario_params[key] = parse_number(line_no, key, value);
      } else {
        fail(line_no, "unknown key '" + key + "' in [scenario]");
      }
    } else if (section == "pde") {
      if (key == "variant") {
        saw_variant = true;
        if (value == "laplace") {
          cfg.variant = PdeVariant::LaplaceNavigation;
        } else if (value == "augmented") {
          cfg.variant = PdeVariant::AugmentedNavigation;
        } else if (value == "hjb") {
          cfg.variant = PdeVariant::FullLinearHJB;
        } else {
          fail(line_no, "variant must be laplace, augmented, or hjb");
        }
      } else if (key == "alpha") {
        cfg.alpha = parse_number(line_no, key, value);
      } else if (key == "lambda") {
        cfg.lambda = parse_number(line_no, key, value);
      } else if (key == "sigma_t") {
        cfg.sigma_t = parse_number_list(line_no, key, value);
      } else if (key == "drift") {
        cfg.drift = parse_number_list(line_no, key, value);
      } else if (key == "q_field") {
        cfg.q_field = value;
      } else {
        fail(line_no, "unknown key '" + key + "' in [pde]");
      }
    } else if (section == "penalties") {
      if (key == "obstacle_phi") {
        cfg.obstacle_phi = parse_number(line_no, key, value);
      } else if (key == "goal_phi") {
        cfg.goal_phi = parse_number(line_no, key, value);
      } else {
        fail(line_no, "unknown key '" + key + "' in [penalties]");
      }
    } else if (section == "solver") {
      if (key == "tol") {
        cfg.tol = parse_number(line_no, key, value);
      } else if (key == "max_sweeps") {
        cfg.max_sweeps = static_cast<long>(parse_number(line_no, key, value));
      } else if (key == "relaxation") {
        cfg.relaxation = parse_number(line_no, key, value);
      } else {
        fail(line_no, "unknown key '" + key + "' in [solver]");
      }
    } else {  // rollout
      if (key == "dt") {
        cfg.dt = parse_number(line_no, key, value);
      } else if (key == "n") {
        cfg.rollout_n = static_cast<long>(parse_number(line_no, key, value));
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_number(line_no, key, value));
      } else {
        fail(line_no, "unknown key '" + key + "' in [rollout]");
      }
    }
  }

  if (cfg.scenario_name.empty()) throw std::runtime_error("scenario name required");
  if (!saw_variant) throw std::runtime_error("pde variant required");
  if (!cfg.lambda.has_value()) {
    throw std::runtime_error("lambda required (scales the boundary transform and V)");
  }
  if (cfg.sigma_t.empty()) throw std::runtime_error("sigma_t required");
  if (cfg.variant == PdeVariant::AugmentedNavigation && !cfg.alpha.has_value()) {
    throw std::runtime_error("alpha required for the augmented variant");
  }
  if (cfg.variant == PdeVariant::FullLinearHJB && cfg.drift.empty()) {
    throw std::runtime_error("drift required for the hjb variant");
  }
  if (cfg.variant != PdeVariant::FullLinearHJB && cfg.q_field.has_value()) {
    throw std::runtime_error("q_field is only supported with the hjb variant");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[scenario]\n";
  out << "name = " << cfg.scenario_name << "\n";
  for (const auto& [key, value] : cfg.scenario_params) {
    out << key << " = " << fmt17(value) << "\n";
  }
  out << "\n[pde]\n";
  out << "variant = " << variant_name(cfg.variant) << "\n";
  if (cfg.lambda.has_value()) out << "lambda = " << fmt17(*cfg.lambda) << "\n";
  if (cfg.alpha.has_value()) out << "alpha = " << fmt17(*cfg.alpha) << "\n";
  out << "sigma_t = ";
  for (std::size_t i = 0; i < cfg.sigma_t.size(); ++i) {
    out << (i ? "," : "") << fmt17(cfg.sigma_t[i]);
  }
  out << "\n";
  if (!cfg.drift.empty()) {
    out << "drift = ";
    for (std::size_t i = 0; i < cfg.drift.size(); ++i) {
      out << (i ? "," : "") << fmt17(cfg.drift[i]);
    }
    out << "\n";
  }
  if (cfg.q_field.has_value()) out << "q_field = " << *cfg.q_field << "\n";
  out << "\n[penalties]\n";
  out << "obstacle_phi = " << fmt17(cfg.obstacle_phi) << "\n";
  out << "goal_phi = " << fmt17(cfg.goal_phi) << "\n";
  out << "\n[solver]\n";
  out << "tol = " << fmt17(cfg.tol) << "\n";
  out << "max_sweeps = " << cfg.max_sweeps << "\n";
  out << "relaxation = " << fmt17(cfg.relaxation) << "\n";
  out << "\n[rollout]\n";
  out << "dt = " << fmt17(cfg.dt) << "\n";
  out << "n = " << cfg.rollout_n << "\n";
  out << "seed = " << cfg.seed << "\n";
  return out.str();
}

CSpaceMap build_map(const ScenarioConfig& cfg) {
  const BuiltinScenario scn = builtin_scenario(cfg.scenario_name, cfg.scenario_params);
  return build_scenario_map(scn, cfg.obstacle_phi, cfg.goal_phi);
}

PdeProblem build_problem(const ScenarioConfig& cfg, const CSpaceMap& map) {
  const int ndim = map.grid.ndim();
  PdeProblem problem;
  problem.variant = cfg.variant;
  problem.map = map;
  problem.lambda = *cfg.lambda;

  if (cfg.sigma_t.size() == 1) {
    problem.sigma_t.assign(static_cast<std::size_t>(ndim), cfg.sigma_t[0]);
  } else if (cfg.sigma_t.size() == static_cast<std::size_t>(ndim)) {
    problem.sigma_t = cfg.sigma_t;
  } else {
    throw std::runtime_error("sigma_t must have 1 entry or one per axis");
  }

  if (cfg.variant == PdeVariant::FullLinearHJB) {
    if (cfg.drift.size() != static_cast<std::size_t>(ndim)) {
      throw std::runtime_error("drift must have one entry per axis");
    }
    Coord f{};
    for (int a = 0; a < ndim; ++a) f[a] = cfg.drift[static_cast<std::size_t>(a)];
    problem.drift.assign(map.grid.total_cells(), f);
  }

  if (cfg.q_field.has_value()) {
    FieldData q = read_field_csv(*cfg.q_field);
    if (!(q.grid == map.grid)) throw std::runtime_error("q_field grid does not match scenario");
    problem.state_cost = std::move(q.values);
  } else if (cfg.alpha.has_value()) {
    problem.state_cost = *cfg.alpha;
  }
  return problem;
}

SolveOptions solve_options(const ScenarioConfig& cfg) {
  SolveOptions opt;
  opt.tol = cfg.tol;
  opt.max_sweeps = cfg.max_sweeps;
  opt.relaxation = cfg.relaxation;
  return opt;
}

double effective_dt(const ScenarioConfig& cfg, const PdeProblem& problem) {
  if (cfg.dt > 0.0) return cfg.dt;
  double sigma_max = 0.0;
  for (double s : problem.sigma_t) sigma_max = std::max(sigma_max, s);
  const double h = problem.map.grid.min_spacing();
  return h * h / sigma_max;
}

}  // namespace hjbnav
