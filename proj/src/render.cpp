#include <algorithm>
#include <cmath>
#include <fstream>

#include "geopeg/env.hpp"

namespace geopeg::env {

namespace {

struct P2 {
  double x, y;
};

struct Camera {
  Pose pose;      // camera frame in world; view direction is local +Z
  double window;  // orthographic width/height, meters
};

Camera camera_for(const EnvState& st, View view) {
  switch (view) {
    case View::Top: {
      // looking straight down; image u = world +X, v = world -Y
      return {{{0.0, 0.0, layout::kTopCamHeight}, Quat::rot_x(geom::kPi)}, layout::kTopWindow};
    }
    case View::WristLeft:
      return {st.left_gripper.compose({{0, 0, -layout::kWristBack}, Quat::identity()}),
              layout::kWristWindow};
    case View::WristRight:
    default:
      return {st.right_gripper.compose({{0, 0, -layout::kWristBack}, Quat::identity()}),
              layout::kWristWindow};
  }
}

// Even-odd scanline fill sampling pixel centers; pts are in continuous pixel
// coordinates (pixel c covers [c, c+1)).
void fill_polygon(Image& img, const std::vector<P2>& pts, uint8_t value) {
  if (pts.size() < 3) return;
  double ymin = 1e30, ymax = -1e30;
  for (const P2& p : pts) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  int r0 = std::max(0, int(std::floor(ymin - 0.5)));
  int r1 = std::min(img.res - 1, int(std::ceil(ymax)));
  std::vector<double> xs;
  for (int r = r0; r <= r1; ++r) {
    double y = r + 0.5;
    xs.clear();
    for (size_t i = 0, n = pts.size(); i < n; ++i) {
      const P2& a = pts[i];
      const P2& b = pts[(i + 1) % n];
      if ((a.y > y) != (b.y > y))
        xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
    }
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i + 1 < xs.size(); i += 2) {
      int c0 = std::max(0, int(std::ceil(xs[i] - 0.5)));
      int c1 = std::min(img.res, int(std::ceil(xs[i + 1] - 0.5)));
      for (int c = c0; c < c1; ++c) img.px[size_t(r) * img.res + c] = value;
    }
  }
}

// Monotone-chain convex hull, CCW.
std::vector<P2> convex_hull(std::vector<P2> p) {
  std::sort(p.begin(), p.end(),
            [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  auto cr = [](const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<P2> h(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cr(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (size_t i = p.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cr(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k > 1 ? k - 1 : k);
  return h;
}

}  // namespace

Image render(const EnvState& st, View view, int resolution, ColorMode mode) {
  if (resolution < 16 || resolution > 256)
    throw std::invalid_argument("render resolution must be in [16, 256]");

  Camera cam = camera_for(st, view);
  Pose inv = cam.pose.inverse();
  double px_per_m = resolution / cam.window;
  auto to_px = [&](const Vec3& c) -> P2 {
    return {(c.x / cam.window + 0.5) * resolution, (0.5 - c.y / cam.window) * resolution};
  };

  uint8_t base = mode == ColorMode::Original ? 153 : 128;   // 0.6 / 0.5
  uint8_t face = mode == ColorMode::Original ? 153 : 255;   // 0.6 / 1.0
  (void)px_per_m;

  Image img;
  img.res = resolution;
  img.px.assign(size_t(resolution) * resolution, 0);

  struct Obj {
    Pose pose;
    bool is_peg;
    double depth;
  };
  std::vector<Obj> objs = {{st.peg_pose(), true, 0.0}, {st.hole_pose(), false, 0.0}};
  for (Obj& o : objs) o.depth = inv.apply(o.pose.t).z;
  // painter's order: far first; skip anything at or behind the near plane
  std::sort(objs.begin(), objs.end(), [](const Obj& a, const Obj& b) { return a.depth > b.depth; });

  const double h = st.pair.base_size / 2.0;
  for (const Obj& o : objs) {
    if (o.depth < layout::kNearCull) continue;

    std::vector<P2> corners;
    corners.reserve(8);
    for (int i = 0; i < 8; ++i) {
      Vec3 local{(i & 1) ? h : -h, (i & 2) ? h : -h, (i & 4) ? h : -h};
      corners.push_back(to_px(inv.apply(o.pose.apply(local))));
    }
    fill_polygon(img, convex_hull(corners), base);

    // extrusion tip face / intrusion bottom face; the intrusion cut into the
    // +Z face is the mirror of the stored mating cross-section
    double zf = o.is_peg ? h + st.pair.extrusion_height : h - st.pair.intrusion_depth;
    const auto& poly = o.is_peg ? st.pair.peg_polygon : st.pair.hole_polygon;
    std::vector<P2> facepts;
    facepts.reserve(poly.size());
    for (const auto& v : poly) {
      Vec3 local{o.is_peg ? v.x : -v.x, v.y, zf};
      facepts.push_back(to_px(inv.apply(o.pose.apply(local))));
    }
    fill_polygon(img, facepts, face);
  }
  return img;
}

void write_pgm(const Image& img, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << "P5\n" << img.res << " " << img.res << "\n255\n";
  f.write(reinterpret_cast<const char*>(img.px.data()), std::streamsize(img.px.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace geopeg::env
