#pragma once

#include <vector>

namespace hjbnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Convex polygon, counter-clockwise vertex order.
struct ConvexPolygon {
  std::vector<Vec2> v;

  double area() const;
  Vec2 centroid() const;
  bool contains(Vec2 p) const;
  // Throws unless convex, CCW, and of area > 1e-12.
  void validate() const;
};

ConvexPolygon make_rect(Vec2 center, Vec2 half_extents);

// Rigid transform: rotate by angle (radians), then translate.
ConvexPolygon transformed(const ConvexPolygon& poly, Vec2 translation, double angle);
Vec2 transform_point(Vec2 p, Vec2 translation, double angle);

// Separating-axis overlap test for convex polygons. Touching counts as intersecting.
bool convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b);

enum class ShapeRole { Obstacle, Goal };

struct Shape {
  ConvexPolygon poly;
  ShapeRole role = ShapeRole::Obstacle;
  double phi = 0.0;
};

using ShapeSet = std::vector<Shape>;

// Planar grasping scene. Gripper and acceptance region live in the gripper
// frame; the nut is fixed in the world frame.
struct GraspScene {
  std::vector<ConvexPolygon> gripper;
  ConvexPolygon nut;
  ConvexPolygon acceptance;
};

}  // namespace hjbnav
