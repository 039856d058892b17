#include "hjbnav/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hjbnav {

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > kMaxDims) {
    throw std::invalid_argument("grid must have between 1 and 3 axes");
  }
  total_ = 1;
  for (int a = 0; a < ndim(); ++a) {
    const Axis& ax = axes_[a];
    if (ax.spacing <= 0.0) throw std::invalid_argument("axis spacing must be > 0");
    if (ax.max <= ax.min) throw std::invalid_argument("axis max must exceed min");
    const double extent = ax.max - ax.min;
    const double n_real = extent / ax.spacing;
    const int n = static_cast<int>(std::llround(n_real));
    if (n < 1 || std::abs(n * ax.spacing - extent) > 1e-9 * extent) {
      throw std::invalid_argument("axis extent is not an integer multiple of spacing");
    }
    counts_[a] = n;
    total_ *= static_cast<std::size_t>(n);
  }
}

Coord GridSpec::cell_center(const Index& idx) const {
  Coord x{};
  for (int a = 0; a < ndim(); ++a) x[a] = center(a, idx[a]);
  return x;
}

std::size_t GridSpec::flat(const Index& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < ndim(); ++a) f = f * counts_[a] + static_cast<std::size_t>(idx[a]);
  return f;
}

Index GridSpec::unflat(std::size_t flat_index) const {
  Index idx{};
  for (int a = ndim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat_index % counts_[a]);
    flat_index /= counts_[a];
  }
  return idx;
}

double GridSpec::wrap_position(int a, double x) const {
  const Axis& ax = axes_[a];
  if (!ax.periodic) return x;
  const double extent = ax.max - ax.min;
  double t = std::fmod(x - ax.min, extent);
  if (t < 0.0) t += extent;
  return ax.min + t;
}

Index GridSpec::cell_of(const Coord& x) const {
  Index idx{};
  for (int a = 0; a < ndim(); ++a) {
    const Axis& ax = axes_[a];
    const double xa = wrap_position(a, x[a]);
    int i = static_cast<int>(std::floor((xa - ax.min) / ax.spacing));
    if (i < 0) i = 0;
    if (i >= counts_[a]) i = counts_[a] - 1;
    idx[a] = i;
  }
  return idx;
}

bool GridSpec::inside(const Coord& x) const {
  for (int a = 0; a < ndim(); ++a) {
    const Axis& ax = axes_[a];
    if (ax.periodic) continue;
    if (x[a] < ax.min || x[a] > ax.max) return false;
  }
  return true;
}

bool GridSpec::neighbor(const Index& idx, int a, int dir, Index* out) const {
  Index n = idx;
  int i = idx[a] + dir;
  if (axes_[a].periodic) {
    if (i < 0) i += counts_[a];
    if (i >= counts_[a]) i -= counts_[a];
  } else if (i < 0 || i >= counts_[a]) {
    return false;
  }
  n[a] = i;
  *out = n;
  return true;
}

bool GridSpec::on_boundary_ring(const Index& idx) const {
  for (int a = 0; a < ndim(); ++a) {
    if (axes_[a].periodic) continue;
    if (idx[a] == 0 || idx[a] == counts_[a] - 1) return true;
  }
  return false;
}

double GridSpec::min_spacing() const {
  double h = axes_[0].spacing;
  for (const Axis& ax : axes_) h = std::min(h, ax.spacing);
  return h;
}

bool GridSpec::operator==(const GridSpec& other) const {
  if (ndim() != other.ndim()) return false;
  for (int a = 0; a < ndim(); ++a) {
    const Axis& p = axes_[a];
    const Axis& q = other.axes_[a];
    if (p.min != q.min || p.max != q.max || p.spacing != q.spacing || p.periodic != q.periodic) {
      return false;
    }
  }
  return true;
}

const char* cell_class_name(CellClass c) {
  switch (c) {
    case CellClass::Free: return "free";
    case CellClass::Obstacle: return "obstacle";
    case CellClass::Goal: return "goal";
    case CellClass::Exterior: return "exterior";
  }
  return "?";
}

std::size_t CSpaceMap::count(CellClass c) const {
  std::size_t n = 0;
  for (CellClass x : cells) {
    if (x == c) ++n;
  }
  return n;
}

double CSpaceMap::boundary_phi(std::size_t i) const {
  if (is_free(i)) throw std::logic_error("boundary_phi queried on a free cell");
  return phi[i];
}

void CSpaceMap::rebuild_goal_list() {
  goal_cells.clear();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == CellClass::Goal) goal_cells.push_back(i);
  }
}

}  // namespace hjbnav
