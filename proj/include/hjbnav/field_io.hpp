#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjbnav/control.hpp"
#include "hjbnav/grid.hpp"

namespace hjbnav {

enum class FieldKind { Desirability, Value };

// Axis index + coordinate picking one 2D layer out of a 3D field.
struct SliceSpec {
  int axis = 2;
  double value = 0.0;
};

// CSV with '#'-prefixed header lines (field kind, scenario, axes) followed by
// row-major values at 17 significant digits; the last axis runs across a line.
void export_field_csv(const CSpaceMap& map, const std::vector<double>& values, FieldKind kind,
                      const std::string& path);

struct FieldData {
  GridSpec grid;
  std::vector<double> values;
  std::string kind;
  std::string scenario;
};

FieldData read_field_csv(const std::string& path);

// One 2D layer of a 3D map/field pair, with the sliced axis dropped.
struct SlicedField {
  CSpaceMap map;
  std::vector<double> values;
};

SlicedField take_slice(const CSpaceMap& map, const std::vector<double>& values, SliceSpec spec);

// 8-bit binary PGM preview of a 2D field: Free cells span 1..255 min-max
// normalized, non-Free cells are black.
void export_field_pgm(const CSpaceMap& map, const std::vector<double>& values,
                      const std::string& path);

// Columns: t, state components, control components, cell class.
void export_trajectory_csv(const Trajectory& traj, const CSpaceMap& map, const std::string& path);

}  // namespace hjbnav
