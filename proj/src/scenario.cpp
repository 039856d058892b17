#include "hjbnav/scenario.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace hjbnav {

namespace {

double param_or(const ScenarioParams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void check_known_params(const ScenarioParams& params, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) ok = true;
    }
    if (!ok) throw std::invalid_argument("unknown scenario parameter: " + key);
  }
}

GridSpec square_grid(double lo, double hi, double h) {
  return GridSpec({Axis{lo, hi, h, false}, Axis{lo, hi, h, false}});
}

}  // namespace

CSpaceMap rasterize_scenario(const ShapeSet& shapes, const GridSpec& grid,
                             double default_obstacle_phi, double goal_phi) {
  if (!(default_obstacle_phi >= 0.0) || !std::isfinite(default_obstacle_phi) ||
      !(goal_phi >= 0.0) || !std::isfinite(goal_phi)) {
    throw std::invalid_argument("penalties must be finite and >= 0");
  }
  for (const Shape& s : shapes) {
    s.poly.validate();
    if (!(s.phi >= 0.0) || !std::isfinite(s.phi)) {
      throw std::invalid_argument("shape penalty must be finite and >= 0");
    }
  }
  if (grid.ndim() != 2) throw std::invalid_argument("shape rasterization expects a 2D grid");

  CSpaceMap map;
  map.grid = grid;
  map.cells.assign(grid.total_cells(), CellClass::Free);
  map.phi.assign(grid.total_cells(), 0.0);

  for (std::size_t f = 0; f < grid.total_cells(); ++f) {
    const Index idx = grid.unflat(f);
    const Coord c = grid.cell_center(idx);
    const Vec2 p{c[0], c[1]};

    const Shape* obstacle_hit = nullptr;
    bool goal_hit = false;
    for (const Shape& s : shapes) {
      if (!s.poly.contains(p)) continue;
      if (s.role == ShapeRole::Obstacle) {
        obstacle_hit = &s;
        break;
      }
      goal_hit = true;
    }

    if (obstacle_hit != nullptr) {
      map.cells[f] = CellClass::Obstacle;
      map.phi[f] = obstacle_hit->phi;
    } else if (goal_hit) {
      map.cells[f] = CellClass::Goal;
      map.phi[f] = goal_phi;
    } else if (grid.on_boundary_ring(idx)) {
      map.cells[f] = CellClass::Exterior;
      map.phi[f] = default_obstacle_phi;
    }
  }

  map.rebuild_goal_list();
  if (map.count(CellClass::Free) == 0) throw std::runtime_error("degenerate scenario: no free cells");
  if (map.goal_cells.empty()) throw std::runtime_error("unsolvable scenario: no goal cells");
  return map;
}

BuiltinScenario builtin_scenario(const std::string& name, const ScenarioParams& params) {
  BuiltinScenario scn;
  scn.name = name;

  if (name == "empty-room") {
    check_known_params(params, {"h"});
    const double h = param_or(params, "h", 0.1);
    scn.grid = square_grid(-5.0, 5.0, h);
    scn.shapes.push_back({make_rect({0.0, 0.0}, {0.3, 0.3}), ShapeRole::Goal, 0.0});
    return scn;
  }

  if (name == "corridor") {
    check_known_params(params, {"h", "narrow_width"});
    const double h = param_or(params, "h", 0.1);
    const double w = param_or(params, "narrow_width", 1.5);
    if (w <= 0.0) throw std::invalid_argument("non-positive corridor width");
    if (7.5 + w >= 10.0) throw std::invalid_argument("corridor width too large for the domain");
    scn.grid = square_grid(0.0, 10.0, h);
    // Dividing wall y in [4.5, 6.0] with a wide 4.0 passage on the left and a
    // narrow passage of width w on the right; goal region along the top-right.
    auto wall = [](double x0, double x1) {
      return make_rect({0.5 * (x0 + x1), 5.25}, {0.5 * (x1 - x0), 0.75});
    };
    scn.shapes.push_back({wall(0.0, 1.5), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({wall(5.5, 7.5), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({wall(7.5 + w, 10.0), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({make_rect({8.25, 9.6}, {1.75, 0.4}), ShapeRole::Goal, 0.0});
    return scn;
  }

  if (name == "maze") {
    check_known_params(params, {"h"});
    const double h = param_or(params, "h", 0.1);
    scn.grid = square_grid(-5.0, 5.0, h);
    // Two nested rectangular rings around the goal at the origin. The outer
    // ring opens at the top right, the inner box opens at the bottom.
    auto box = [](double x0, double x1, double y0, double y1) {
      return make_rect({0.5 * (x0 + x1), 0.5 * (y0 + y1)}, {0.5 * (x1 - x0), 0.5 * (y1 - y0)});
    };
    // inner box (open bottom)
    scn.shapes.push_back({box(-1.25, -0.75, -1.25, 1.25), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({box(-1.25, 1.25, 0.75, 1.25), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({box(0.75, 1.25, -1.25, 1.25), ShapeRole::Obstacle, 0.0});
    // outer ring (gap at top, x in [0.75, 2.25])
    scn.shapes.push_back({box(-2.75, -2.25, -2.75, 2.75), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({box(-2.75, 2.75, -2.75, -2.25), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({box(2.25, 2.75, -2.75, 2.75), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({box(-2.75, 0.75, 2.25, 2.75), ShapeRole::Obstacle, 0.0});
    scn.shapes.push_back({make_rect({0.0, 0.0}, {0.3, 0.3}), ShapeRole::Goal, 0.0});
    return scn;
  }

  if (name == "grasp") {
    check_known_params(params, {"h"});
    const double h = param_or(params, "h", 0.25);
    const double two_pi = 2.0 * std::numbers::pi;
    scn.grid = GridSpec({Axis{-3.0, 3.0, h, false}, Axis{-3.0, 3.0, h, false},
                         Axis{0.0, two_pi, two_pi / 18.0, true}});
    GraspScene scene;
    // Jaws open toward +x in the gripper frame: palm bar plus two fingers
    // leaving a 1.0-wide mouth. The mouth must clear the nut by more than
    // half a planar cell, or no cell center can ever classify as Goal.
    scene.gripper.push_back(make_rect({-0.125, 0.0}, {0.125, 0.75}));
    scene.gripper.push_back(make_rect({0.375, 0.625}, {0.375, 0.125}));
    scene.gripper.push_back(make_rect({0.375, -0.625}, {0.375, 0.125}));
    scene.acceptance = make_rect({0.4, 0.0}, {0.25, 0.5});
    scene.nut = make_rect({0.0, 0.0}, {0.25, 0.25});
    scn.grasp = scene;
    return scn;
  }

  throw std::invalid_argument("unknown scenario name: " + name);
}

CSpaceMap grasp_cspace(const GraspScene& scene, const GridSpec& grid, double obstacle_phi,
                       double goal_phi) {
  if (grid.ndim() != 3 || !grid.axis(2).periodic || grid.axis(0).periodic || grid.axis(1).periodic) {
    throw std::invalid_argument("grasp c-space expects (x, y, theta) with periodic theta");
  }
  if (scene.gripper.empty()) throw std::invalid_argument("gripper polygon list is empty");
  for (const ConvexPolygon& p : scene.gripper) p.validate();
  scene.nut.validate();
  scene.acceptance.validate();

  CSpaceMap map;
  map.grid = grid;
  map.cells.assign(grid.total_cells(), CellClass::Free);
  map.phi.assign(grid.total_cells(), 0.0);

  const Vec2 nut_centroid = scene.nut.centroid();
  for (std::size_t f = 0; f < grid.total_cells(); ++f) {
    const Index idx = grid.unflat(f);
    const Coord c = grid.cell_center(idx);
    const Vec2 pos{c[0], c[1]};
    const double theta = c[2];

    bool collides = false;
    for (const ConvexPolygon& part : scene.gripper) {
      if (convex_intersect(transformed(part, pos, theta), scene.nut)) {
        collides = true;
        break;
      }
    }
    if (collides) {
      map.cells[f] = CellClass::Obstacle;
      map.phi[f] = obstacle_phi;
    } else if (transformed(scene.acceptance, pos, theta).contains(nut_centroid)) {
      map.cells[f] = CellClass::Goal;
      map.phi[f] = goal_phi;
    } else if (grid.on_boundary_ring(idx)) {
      map.cells[f] = CellClass::Exterior;
      map.phi[f] = obstacle_phi;
    }
  }

  map.rebuild_goal_list();
  if (map.count(CellClass::Free) == 0) throw std::runtime_error("degenerate scenario: no free cells");
  if (map.goal_cells.empty()) throw std::runtime_error("unsolvable scenario: no goal cells");
  return map;
}

CSpaceMap build_scenario_map(const BuiltinScenario& scenario, double obstacle_phi,
                             double goal_phi) {
  CSpaceMap map;
  if (scenario.grasp.has_value()) {
    map = grasp_cspace(*scenario.grasp, scenario.grid, obstacle_phi, goal_phi);
  } else {
    ShapeSet shapes = scenario.shapes;
    for (Shape& s : shapes) {
      if (s.role == ShapeRole::Obstacle) s.phi = obstacle_phi;
    }
    map = rasterize_scenario(shapes, scenario.grid, obstacle_phi, goal_phi);
  }
  map.name = scenario.name;
  return map;
}

bool check_connectivity(const CSpaceMap& map, std::size_t start_cell) {
  if (start_cell >= map.cells.size() || !map.is_free(start_cell)) {
    throw std::invalid_argument("start not Free");
  }
  const GridSpec& grid = map.grid;
  std::vector<char> seen(map.cells.size(), 0);
  std::deque<std::size_t> queue{start_cell};
  seen[start_cell] = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const Index idx = grid.unflat(cur);
    for (int a = 0; a < grid.ndim(); ++a) {
      for (int dir = -1; dir <= 1; dir += 2) {
        Index nb;
        if (!grid.neighbor(idx, a, dir, &nb)) continue;
        const std::size_t nf = grid.flat(nb);
        if (map.cells[nf] == CellClass::Goal) return true;
        if (!seen[nf] && map.is_free(nf)) {
          seen[nf] = 1;
          queue.push_back(nf);
        }
      }
    }
  }
  return false;
}

}  // namespace hjbnav
