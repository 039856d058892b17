#pragma once

#include <map>
#include <optional>
#include <string>

#include "hjbnav/geometry.hpp"
#include "hjbnav/grid.hpp"

namespace hjbnav {

// Fully specified geometric scene for one of the built-in tasks. The grasp
// task carries a GraspScene instead of a flat shape list.
struct BuiltinScenario {
  std::string name;
  GridSpec grid;
  ShapeSet shapes;
  std::optional<GraspScene> grasp;
};

using ScenarioParams = std::map<std::string, double>;

// Classifies every cell by center containment. Obstacle wins over Goal on
// overlap; the non-periodic boundary ring becomes Exterior with the default
// obstacle penalty. Throws "degenerate scenario" when nothing is Free and
// "unsolvable scenario" when no Goal cell exists.
CSpaceMap rasterize_scenario(const ShapeSet& shapes, const GridSpec& grid,
                             double default_obstacle_phi, double goal_phi);

// Built-in scenes: empty-room, corridor, maze, grasp.
// Recognized params: "h" (planar spacing), "narrow_width" (corridor).
BuiltinScenario builtin_scenario(const std::string& name, const ScenarioParams& params = {});

// Sweeps all (x, y, theta) poses: gripper/nut overlap -> Obstacle, nut centroid
// inside the transformed acceptance region -> Goal, otherwise Free.
CSpaceMap grasp_cspace(const GraspScene& scene, const GridSpec& grid, double obstacle_phi,
                       double goal_phi);

// Rasterizes a built-in scene with uniform penalties, dispatching to
// grasp_cspace when the scene is the grasping task.
CSpaceMap build_scenario_map(const BuiltinScenario& scenario, double obstacle_phi,
                             double goal_phi);

// True iff a Goal cell is reachable from start through face-adjacent Free cells.
bool check_connectivity(const CSpaceMap& map, std::size_t start_cell);

}  // namespace hjbnav
