#pragma once

// Test-side reference implementations. These stay independent of the library
// code paths they are used to validate.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "hjbnav/geometry.hpp"
#include "hjbnav/grid.hpp"

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(f, a, b, fa, fm, fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// K0 through its integral representation, integral over t of exp(-x cosh t).
inline double k0_quadrature(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("k0_quadrature requires x > 0");
  const double big = 740.0 / x + 1.0;
  const double t_max = std::log(big + std::sqrt(big * big - 1.0));  // acosh
  auto f = [x](double t) { return std::exp(-x * std::cosh(t)); };
  // Coarse pass fixes the tolerance scale, then refine.
  double coarse = 0.0;
  const int n = 128;
  for (int i = 0; i < n; ++i) {
    const double t0 = t_max * i / n;
    const double t1 = t_max * (i + 1) / n;
    coarse += (t1 - t0) / 6.0 * (f(t0) + 4.0 * f(0.5 * (t0 + t1)) + f(t1));
  }
  return adaptive_simpson(f, 0.0, t_max, 1e-12 * coarse);
}

// Dijkstra over Free cells, 8-connected with sqrt(2)-weighted diagonals, from
// a start cell to the nearest Goal cell. Lengths are in coordinate units.
inline double dijkstra_8_shortest(const hjbnav::CSpaceMap& map, std::size_t start) {
  using hjbnav::CellClass;
  using hjbnav::Index;
  const hjbnav::GridSpec& grid = map.grid;
  if (grid.ndim() != 2) throw std::invalid_argument("dijkstra oracle expects a 2D map");
  if (!map.is_free(start)) throw std::invalid_argument("dijkstra start must be Free");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(grid.total_cells(), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[start] = 0.0;
  heap.push({0.0, start});
  const double hx = grid.axis(0).spacing;
  const double hy = grid.axis(1).spacing;
  double best_goal = inf;

  while (!heap.empty()) {
    const auto [d, cell] = heap.top();
    heap.pop();
    if (d > dist[cell]) continue;
    if (d >= best_goal) break;
    const Index idx = grid.unflat(cell);
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const int ix = idx[0] + dx;
        const int iy = idx[1] + dy;
        if (ix < 0 || iy < 0 || ix >= grid.cells(0) || iy >= grid.cells(1)) continue;
        const std::size_t nf = grid.flat(Index{ix, iy, 0});
        const double w = (dx != 0 && dy != 0) ? std::sqrt(hx * hx + hy * hy)
                                              : (dx != 0 ? hx : hy);
        if (map.cells[nf] == CellClass::Goal) {
          best_goal = std::min(best_goal, d + w);
          continue;
        }
        if (!map.is_free(nf)) continue;
        if (d + w < dist[nf]) {
          dist[nf] = d + w;
          heap.push({d + w, nf});
        }
      }
    }
  }
  return best_goal;
}

// Breadth-first reachability check used against check_connectivity.
inline bool flood_fill_reaches_goal(const hjbnav::CSpaceMap& map, std::size_t start) {
  using hjbnav::CellClass;
  const hjbnav::GridSpec& grid = map.grid;
  std::vector<char> seen(grid.total_cells(), 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const std::size_t cell = stack.back();
    stack.pop_back();
    const hjbnav::Index idx = grid.unflat(cell);
    for (int a = 0; a < grid.ndim(); ++a) {
      for (int dir = -1; dir <= 1; dir += 2) {
        hjbnav::Index nb;
        if (!grid.neighbor(idx, a, dir, &nb)) continue;
        const std::size_t nf = grid.flat(nb);
        if (map.cells[nf] == CellClass::Goal) return true;
        if (!seen[nf] && map.is_free(nf)) {
          seen[nf] = 1;
          stack.push_back(nf);
        }
      }
    }
  }
  return false;
}

// Convex hull (monotone chain) of random points: a random convex CCW polygon.
inline hjbnav::ConvexPolygon random_convex_polygon(std::mt19937_64& rng, hjbnav::Vec2 center,
                                                   double radius) {
  using hjbnav::Vec2;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec2> pts;
  for (int i = 0; i < 14; ++i) {
    pts.push_back({center.x + radius * unit(rng), center.y + radius * unit(rng)});
  }
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto cross3 = [](Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && cross3(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hjbnav::ConvexPolygon{hull};
}

}  // namespace oracles
