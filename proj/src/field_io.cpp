#include "hjbnav/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hjbnav {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to " + path);
  return out;
}

}  // namespace

void export_field_csv(const CSpaceMap& map, const std::vector<double>& values, FieldKind kind,
                      const std::string& path) {
  const GridSpec& grid = map.grid;
  if (values.size() != grid.total_cells()) throw std::invalid_argument("field/grid size mismatch");
  std::ofstream out = open_out(path);
  out << "# field " << (kind == FieldKind::Desirability ? "psi" : "value") << "\n";
  out << "# scenario " << (map.name.empty() ? "-" : map.name) << "\n";
  out << "# axes " << grid.ndim() << "\n";
  for (int a = 0; a < grid.ndim(); ++a) {
    const Axis& ax = grid.axis(a);
    out << "# axis " << a << " " << fmt17(ax.min) << " " << fmt17(ax.max) << " "
        << fmt17(ax.spacing) << " " << (ax.periodic ? 1 : 0) << "\n";
  }
  const int ncols = grid.cells(grid.ndim() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << fmt17(values[i]);
    out << (((i + 1) % static_cast<std::size_t>(ncols)) == 0 ? '\n' : ',');
  }
}

FieldData read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  FieldData data;
  std::vector<Axis> axes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tag;
      ls >> tag;
      if (tag == "field") {
        ls >> data.kind;
      } else if (tag == "scenario") {
        ls >> data.scenario;
      } else if (tag == "axis") {
        int a = 0, periodic = 0;
        Axis ax;
        ls >> a >> ax.min >> ax.max >> ax.spacing >> periodic;
        ax.periodic = periodic != 0;
        axes.push_back(ax);
      }
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      if (!tok.empty()) data.values.push_back(std::stod(tok));
    }
  }
  if (axes.empty()) throw std::runtime_error("missing axis headers in " + path);
  data.grid = GridSpec(axes);
  if (data.values.size() != data.grid.total_cells()) {
    throw std::runtime_error("value count does not match grid in " + path);
  }
  return data;
}

SlicedField take_slice(const CSpaceMap& map, const std::vector<double>& values, SliceSpec spec) {
  const GridSpec& grid = map.grid;
  if (grid.ndim() != 3) throw std::invalid_argument("take_slice expects a 3D field");
  if (values.size() != grid.total_cells()) throw std::invalid_argument("field/grid size mismatch");
  if (spec.axis < 0 || spec.axis >= 3) throw std::invalid_argument("slice axis out of range");

  Coord probe{};
  probe[spec.axis] = spec.value;
  const int layer = grid.cell_of(probe)[spec.axis];

  std::vector<Axis> axes;
  int kept[2] = {0, 0};
  int n_kept = 0;
  for (int a = 0; a < 3; ++a) {
    if (a == spec.axis) continue;
    axes.push_back(grid.axis(a));
    kept[n_kept++] = a;
  }

  SlicedField out;
  out.map.grid = GridSpec(axes);
  out.map.name = map.name;
  const std::size_t total = out.map.grid.total_cells();
  out.map.cells.resize(total);
  out.map.phi.resize(total);
  out.values.resize(total);
  for (std::size_t f = 0; f < total; ++f) {
    const Index i2 = out.map.grid.unflat(f);
    Index i3{};
    i3[spec.axis] = layer;
    i3[kept[0]] = i2[0];
    i3[kept[1]] = i2[1];
    const std::size_t src = grid.flat(i3);
    out.map.cells[f] = map.cells[src];
    out.map.phi[f] = map.phi[src];
    out.values[f] = values[src];
  }
  out.map.rebuild_goal_list();
  return out;
}

void export_field_pgm(const CSpaceMap& map, const std::vector<double>& values,
                      const std::string& path) {
  const GridSpec& grid = map.grid;
  if (grid.ndim() != 2) throw std::invalid_argument("PGM export expects a 2D field");
  if (values.size() != grid.total_cells()) throw std::invalid_argument("field/grid size mismatch");

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!map.is_free(i)) continue;
    if (first || values[i] < lo) lo = values[i];
    if (first || values[i] > hi) hi = values[i];
    first = false;
  }
  const double span = hi - lo;

  const int w = grid.cells(0);
  const int h = grid.cells(1);
  std::ofstream out = open_out(path);
  out << "P5\n" << w << " " << h << "\n255\n";
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const std::size_t f = grid.flat(Index{col, h - 1 - row, 0});  // image top = axis max
      unsigned char pix = 0;
      if (map.is_free(f)) {
        const double t = span > 0.0 ? (values[f] - lo) / span : 0.5;
        pix = static_cast<unsigned char>(1 + std::lround(254.0 * t));
      }
      out.put(static_cast<char>(pix));
    }
  }
}

void export_trajectory_csv(const Trajectory& traj, const CSpaceMap& map, const std::string& path) {
  const GridSpec& grid = map.grid;
  std::ofstream out = open_out(path);
  out << "# t";
  for (int a = 0; a < grid.ndim(); ++a) out << ",x" << a;
  for (int a = 0; a < grid.ndim(); ++a) out << ",u" << a;
  out << ",cell\n";
  out << "# outcome " << outcome_name(traj.outcome) << " cost " << fmt17(traj.cost) << "\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << fmt17(static_cast<double>(k) * traj.dt);
    for (int a = 0; a < grid.ndim(); ++a) out << "," << fmt17(traj.states[k][a]);
    for (int a = 0; a < grid.ndim(); ++a) {
      out << "," << (k < traj.controls.size() ? fmt17(traj.controls[k][a]) : "0");
    }
    const std::size_t cell = grid.flat(grid.cell_of(traj.states[k]));
    out << "," << cell_class_name(map.cells[cell]) << "\n";
  }
}

}  // namespace hjbnav
