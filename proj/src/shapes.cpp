#include "geopeg/shapes.hpp"

#include <cmath>
#include <fstream>

#include "geopeg/geom.hpp"

namespace geopeg::shapes {

using geom::kPi;

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
  double a6 = 6.0 * polygon_area(poly);
  double cx = 0.0, cy = 0.0;
  for (size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    double cr = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * cr;
    cy += (p.y + q.y) * cr;
  }
  return {cx / a6, cy / a6};
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  bool in = false;
  for (size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x > p.x) in = !in;
    }
  }
  return in;
}

double distance_to_boundary(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = 1e30;
  for (size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    double ex = b.x - a.x, ey = b.y - a.y;
    double len2 = ex * ex + ey * ey;
    double t = len2 > 0 ? ((p.x - a.x) * ex + (p.y - a.y) * ey) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double dx = p.x - (a.x + t * ex), dy = p.y - (a.y + t * ey);
    best = std::min(best, std::sqrt(dx * dx + dy * dy));
  }
  return best;
}

double min_edge_line_distance(const std::vector<Vec2>& poly) {
  Vec2 c = polygon_centroid(poly);
  double best = 1e30;
  for (size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    double ex = b.x - a.x, ey = b.y - a.y;
    double len = std::sqrt(ex * ex + ey * ey);
    if (len < 1e-12) continue;
    double d = std::abs((c.x - a.x) * ey - (c.y - a.y) * ex) / len;
    best = std::min(best, d);
  }
  return best;
}

namespace {

std::vector<Vec2> rotated_about(const std::vector<Vec2>& poly, const Vec2& c,
                                double angle) {
  double co = std::cos(angle), si = std::sin(angle);
  std::vector<Vec2> out;
  out.reserve(poly.size());
  for (const Vec2& v : poly) {
    double x = v.x - c.x, y = v.y - c.y;
    out.push_back({c.x + co * x - si * y, c.y + si * x + co * y});
  }
  return out;
}

bool matches_cyclically(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                        double tol) {
  size_t n = a.size();
  if (b.size() != n) return false;
  for (size_t off = 0; off < n; ++off) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      const Vec2& p = a[i];
      const Vec2& q = b[(i + off) % n];
      ok = std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol;
    }
    if (ok) return true;
  }
  return false;
}

std::vector<Vec2> regular_polygon(int n, double radius, double start_deg) {
  std::vector<Vec2> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    double a = geom::radians(start_deg + 360.0 * i / n);
    v.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return v;
}

std::vector<ShapeSpec> build_shapes() {
  std::vector<ShapeSpec> out;
  auto add = [&out](std::string name, std::vector<Vec2> poly, int order) {
    out.push_back({std::move(name), std::move(poly), order, 0.002});
  };

  // order 1
  add("arrow", {{0.0, 0.020}, {-0.017, -0.013}, {0.0, -0.005}, {0.017, -0.013}}, 1);
  // square tag with a single beveled corner; chiral on purpose
  add("key",
      {{-0.016, -0.018}, {0.010, -0.018}, {0.018, -0.006}, {0.018, 0.016}, {-0.016, 0.016}},
      1);
  add("u",
      {{-0.017, -0.017}, {0.017, -0.017}, {0.017, 0.017}, {0.005, 0.017},
       {0.005, 0.005}, {-0.005, 0.005}, {-0.005, 0.017}, {-0.017, 0.017}},
      1);
  add("pentagon", regular_polygon(5, 0.018, 90.0), 1);

  // order 2
  add("minus", {{0.020, 0.006}, {-0.020, 0.006}, {-0.020, -0.006}, {0.020, -0.006}}, 2);
  add("hexagon", regular_polygon(6, 0.018, 0.0), 2);
  add("diamond", {{0.020, 0.0}, {0.0, 0.010}, {-0.020, 0.0}, {0.0, -0.010}}, 2);

  // order 4
  add("plus",
      {{0.020, 0.006},  {0.006, 0.006},  {0.006, 0.020},  {-0.006, 0.020},
       {-0.006, 0.006}, {-0.020, 0.006}, {-0.020, -0.006}, {-0.006, -0.006},
       {-0.006, -0.020}, {0.006, -0.020}, {0.006, -0.006}, {0.020, -0.006}},
      4);
  add("circle", regular_polygon(32, 0.016, 0.0), 4);

  return out;
}

}  // namespace

const std::vector<ShapeSpec>& builtin_shapes() {
  static const std::vector<ShapeSpec> shapes = build_shapes();
  return shapes;
}

const ShapeSpec& builtin_shape(const std::string& name) {
  for (const ShapeSpec& s : builtin_shapes())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown shape: " + name);
}

int symmetry_order_of(const std::vector<Vec2>& polygon, double tol) {
  Vec2 c = polygon_centroid(polygon);
  int order = 1;
  for (int j = 1; j < 4; ++j) {
    if (matches_cyclically(rotated_about(polygon, c, j * kPi / 2.0), polygon, tol))
      ++order;
  }
  // matching j's form a subgroup of Z4, so order lands in {1, 2, 4}
  return order;
}

ObjectPair make_pair(const ShapeSpec& shape, double clearance,
                     double extrusion_rotation) {
  if (!(clearance >= 0.001 && clearance <= 0.004))
    throw InvalidClearance("clearance outside [0.001, 0.004] m");
  bool rot0 = std::abs(extrusion_rotation) < 1e-9;
  bool rot45 = std::abs(extrusion_rotation - kPi / 4.0) < 1e-9;
  if (!rot0 && !rot45)
    throw std::invalid_argument("extrusion rotation must be 0 or 45 deg");

  // rotate about the face origin, then scale about the area centroid
  std::vector<Vec2> design = rotated_about(shape.polygon, {0.0, 0.0}, extrusion_rotation);
  Vec2 c = polygon_centroid(design);
  double dmin = min_edge_line_distance(design);
  double half = clearance / 2.0;
  if (dmin <= half)
    throw std::invalid_argument("shape too thin for requested clearance");
  double s_in = 1.0 - half / dmin, s_out = 1.0 + half / dmin;

  ObjectPair pair;
  pair.shape = shape;
  pair.extrusion_rotation = extrusion_rotation;
  pair.clearance = clearance;
  pair.peg_polygon.reserve(design.size());
  pair.hole_polygon.reserve(design.size());
  for (const Vec2& v : design) {
    pair.peg_polygon.push_back({c.x + s_in * (v.x - c.x), c.y + s_in * (v.y - c.y)});
    pair.hole_polygon.push_back({c.x + s_out * (v.x - c.x), c.y + s_out * (v.y - c.y)});
  }
  return pair;
}

void write_polygon_file(const ShapeSpec& shape, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << "# " << shape.name << " " << shape.symmetry_order << " " << shape.clearance << "\n";
  for (const Vec2& v : shape.polygon) f << v.x << " " << v.y << "\n";
}

}  // namespace geopeg::shapes
