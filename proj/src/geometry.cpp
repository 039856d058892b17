#include "hjbnav/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hjbnav {

double ConvexPolygon::area() const {
  double twice = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(v[i], v[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Vec2 ConvexPolygon::centroid() const {
  double twice = 0.0;
  Vec2 c{0.0, 0.0};
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = cross(v[i], v[(i + 1) % n]);
    twice += w;
    c.x += w * (v[i].x + v[(i + 1) % n].x);
    c.y += w * (v[i].y + v[(i + 1) % n].y);
  }
  const double a6 = 3.0 * twice;
  return {c.x / a6, c.y / a6};
}

bool ConvexPolygon::contains(Vec2 p) const {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i];
    if (cross(e, p - v[i]) < 0.0) return false;
  }
  return true;
}

void ConvexPolygon::validate() const {
  if (v.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  if (area() <= 1e-12) throw std::invalid_argument("degenerate polygon (area <= 1e-12)");
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    if (cross(e0, e1) < 0.0) {
      throw std::invalid_argument("polygon must be convex with counter-clockwise winding");
    }
  }
}

ConvexPolygon make_rect(Vec2 center, Vec2 half_extents) {
  const double hx = half_extents.x;
  const double hy = half_extents.y;
  return ConvexPolygon{{{center.x - hx, center.y - hy},
                        {center.x + hx, center.y - hy},
                        {center.x + hx, center.y + hy},
                        {center.x - hx, center.y + hy}}};
}

Vec2 transform_point(Vec2 p, Vec2 translation, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y};
}

ConvexPolygon transformed(const ConvexPolygon& poly, Vec2 translation, double angle) {
  ConvexPolygon out;
  out.v.reserve(poly.v.size());
  for (Vec2 p : poly.v) out.v.push_back(transform_point(p, translation, angle));
  return out;
}

namespace {

// Projects both polygons on the normals of one polygon's edges; true if a
// separating axis is found among them.
bool separated_on_edges(const ConvexPolygon& a, const ConvexPolygon& b) {
  const std::size_t n = a.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = a.v[(i + 1) % n] - a.v[i];
    const Vec2 axis{-e.y, e.x};
    double amin = dot(axis, a.v[0]), amax = amin;
    for (Vec2 p : a.v) {
      const double d = dot(axis, p);
      amin = std::min(amin, d);
      amax = std::max(amax, d);
    }
    double bmin = dot(axis, b.v[0]), bmax = bmin;
    for (Vec2 p : b.v) {
      const double d = dot(axis, p);
      bmin = std::min(bmin, d);
      bmax = std::max(bmax, d);
    }
    if (amax < bmin || bmax < amin) return true;
  }
  return false;
}

}  // namespace

bool convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  return !separated_on_edges(a, b) && !separated_on_edges(b, a);
}

}  // namespace hjbnav
