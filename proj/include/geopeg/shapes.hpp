#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace geopeg::shapes {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// A peg/hole cross-section design: simple CCW polygon inside the 0.04 m
// design square centered on the face origin.
struct ShapeSpec {
  std::string name;
  std::vector<Vec2> polygon;
  int symmetry_order = 1;     // rotations in {0,90,180,270} deg mapping it onto itself
  double clearance = 0.002;   // default peg/hole tolerance, meters
};

// The nine shapes: arrow, key, u, pentagon (order 1); minus, hexagon,
// diamond (order 2); plus, circle (order 4). Deterministic.
const std::vector<ShapeSpec>& builtin_shapes();
const ShapeSpec& builtin_shape(const std::string& name);

// Number of rotations in {0,90,180,270} deg about the area centroid mapping
// the polygon onto itself (vertex matching up to cyclic relabeling, within
// tol meters). Always 1, 2 or 4.
int symmetry_order_of(const std::vector<Vec2>& polygon, double tol = 1e-6);

double polygon_area(const std::vector<Vec2>& poly);  // signed; CCW positive
Vec2 polygon_centroid(const std::vector<Vec2>& poly);
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);
double distance_to_boundary(const Vec2& p, const std::vector<Vec2>& poly);
// Distance from the area centroid to the nearest edge supporting line;
// bounds how far centroid scaling moves each edge.
double min_edge_line_distance(const std::vector<Vec2>& poly);

class InvalidClearance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectPair {
  ShapeSpec shape;
  double base_size = 0.08;          // cube edge, meters
  double extrusion_height = 0.02;   // peg, out of the +Z face
  double intrusion_depth = 0.025;   // hole, into the +Z face
  double extrusion_rotation = 0.0;  // radians, 0 or 45 deg
  double clearance = 0.002;
  // Cross-sections in the shared mating plane (the peg face frame); the peg
  // polygon lies strictly inside the hole polygon. The hole object's
  // physical intrusion is this hole polygon mirrored about its local X
  // (the shape as seen by the arriving peg).
  std::vector<Vec2> peg_polygon;
  std::vector<Vec2> hole_polygon;
};

// Peg shrunk / hole grown by scaling about the centroid so the closest edge
// moves clearance/2; clearance must lie in [0.001, 0.004].
ObjectPair make_pair(const ShapeSpec& shape, double clearance,
                     double extrusion_rotation = 0.0);

// Plain-text export: "# name symmetry_order clearance" then one "x y" per
// vertex, meters.
void write_polygon_file(const ShapeSpec& shape, const std::filesystem::path& path);

}  // namespace geopeg::shapes
