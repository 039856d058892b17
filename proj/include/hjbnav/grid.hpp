#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hjbnav {

inline constexpr int kMaxDims = 3;

// Continuous state / per-axis quantities. Entries past the grid dimension are unused.
using Coord = std::array<double, kMaxDims>;
using Index = std::array<int, kMaxDims>;

// One grid axis. Angular axes are stored in radians and flagged periodic;
// a periodic axis wraps instead of carrying an exterior ring.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  double spacing = 0.1;
  bool periodic = false;
};

class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<Axis> axes);

  int ndim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[a]; }
  int cells(int a) const { return counts_[a]; }
  std::size_t total_cells() const { return total_; }

  double center(int a, int i) const {
    return axes_[a].min + (static_cast<double>(i) + 0.5) * axes_[a].spacing;
  }
  Coord cell_center(const Index& idx) const;

  std::size_t flat(const Index& idx) const;
  Index unflat(std::size_t flat_index) const;

  // Index of the cell containing x. Periodic axes wrap x into range first;
  // non-periodic axes clamp to the nearest edge cell.
  Index cell_of(const Coord& x) const;
  // True if x lies in the bounding box (periodic axes always count as inside).
  bool inside(const Coord& x) const;
  // Wraps a periodic position into [min, max).
  double wrap_position(int a, double x) const;

  // Face neighbor along axis a in direction dir (+1/-1). Returns false when the
  // step leaves a non-periodic axis range.
  bool neighbor(const Index& idx, int a, int dir, Index* out) const;

  // Cell on the non-periodic boundary ring of any axis.
  bool on_boundary_ring(const Index& idx) const;

  double min_spacing() const;

  bool operator==(const GridSpec& other) const;

 private:
  std::vector<Axis> axes_;
  std::array<int, kMaxDims> counts_{};
  std::size_t total_ = 0;
};

enum class CellClass : std::uint8_t { Free, Obstacle, Goal, Exterior };

const char* cell_class_name(CellClass c);

// Gridded configuration space. Non-Free cells carry a boundary penalty phi;
// phi entries of Free cells are ignored.
struct CSpaceMap {
  GridSpec grid;
  std::vector<CellClass> cells;
  std::vector<double> phi;
  std::vector<std::size_t> goal_cells;
  std::string name;

  bool is_free(std::size_t i) const { return cells[i] == CellClass::Free; }
  std::size_t count(CellClass c) const;
  double boundary_phi(std::size_t i) const;
  void rebuild_goal_list();
};

}  // namespace hjbnav
