#include "geopeg/geom.hpp"

#include <algorithm>
#include <cstdio>

namespace geopeg::geom {

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
          a[3] * v.x + a[4] * v.y + a[5] * v.z,
          a[6] * v.x + a[7] * v.y + a[8] * v.z};
}

double Mat3::det() const {
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

Quat Quat::axis_angle(const Vec3& axis, double angle) {
  Vec3 u = axis.normalized();
  double h = 0.5 * angle, s = std::sin(h);
  return {std::cos(h), u.x * s, u.y * s, u.z * s};
}

Quat Quat::normalized() const {
  double n = norm();
  if (n < 1e-12) throw DegenerateInput("quaternion norm ~ 0");
  return {w / n, x / n, y / n, z / n};
}

Quat Quat::operator*(const Quat& o) const {
  Quat r{w * o.w - x * o.x - y * o.y - z * o.z,
         w * o.x + x * o.w + y * o.z - z * o.y,
         w * o.y - x * o.z + y * o.w + z * o.x,
         w * o.z + x * o.y - y * o.x + z * o.w};
  return r.normalized();
}

Vec3 Quat::rotate(const Vec3& v) const {
  // v + 2 w (u x v) + 2 u x (u x v)
  Vec3 u{x, y, z};
  Vec3 c1 = cross(u, v);
  Vec3 c2 = cross(u, c1);
  return v + c1 * (2.0 * w) + c2 * 2.0;
}

Mat3 Quat::matrix() const {
  double xx = 2 * x * x, yy = 2 * y * y, zz = 2 * z * z;
  double xy = 2 * x * y, xz = 2 * x * z, yz = 2 * y * z;
  double wx = 2 * w * x, wy = 2 * w * y, wz = 2 * w * z;
  Mat3 r;
  r.a = {1 - yy - zz, xy - wz,     xz + wy,
         xy + wz,     1 - xx - zz, yz - wx,
         xz - wy,     yz + wx,     1 - xx - yy};
  return r;
}

Quat Quat::from_matrix(const Mat3& R) {
  double t;
  Quat q;
  if (R(2, 2) < 0) {
    if (R(0, 0) > R(1, 1)) {
      t = 1 + R(0, 0) - R(1, 1) - R(2, 2);
      q = {R(2, 1) - R(1, 2), t, R(0, 1) + R(1, 0), R(2, 0) + R(0, 2)};
    } else {
      t = 1 - R(0, 0) + R(1, 1) - R(2, 2);
      q = {R(0, 2) - R(2, 0), R(0, 1) + R(1, 0), t, R(1, 2) + R(2, 1)};
    }
  } else {
    if (R(0, 0) < -R(1, 1)) {
      t = 1 - R(0, 0) - R(1, 1) + R(2, 2);
      q = {R(1, 0) - R(0, 1), R(2, 0) + R(0, 2), R(1, 2) + R(2, 1), t};
    } else {
      t = 1 + R(0, 0) + R(1, 1) + R(2, 2);
      q = {t, R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1)};
    }
  }
  return q.normalized();
}

Quat slerp(const Quat& a, const Quat& b, double t) {
  Quat bb = b;
  double d = a.dot(b);
  if (d < 0) {  // shortest arc
    bb = {-b.w, -b.x, -b.y, -b.z};
    d = -d;
  }
  d = std::min(d, 1.0);
  double theta = std::acos(d);
  if (theta < 1e-9) {
    Quat r{a.w + (bb.w - a.w) * t, a.x + (bb.x - a.x) * t,
           a.y + (bb.y - a.y) * t, a.z + (bb.z - a.z) * t};
    return r.normalized();
  }
  double s = std::sin(theta);
  double ca = std::sin((1 - t) * theta) / s, cb = std::sin(t * theta) / s;
  Quat r{ca * a.w + cb * bb.w, ca * a.x + cb * bb.x, ca * a.y + cb * bb.y,
         ca * a.z + cb * bb.z};
  return r.normalized();
}

Pose Pose::compose(const Pose& o) const { return {t + q.rotate(o.t), q * o.q}; }

Pose Pose::inverse() const {
  Quat qi = q.conjugate();
  return {qi.rotate(-t), qi};
}

Mat3 gram_schmidt(const Rot6D& r) {
  constexpr double eps = 1e-8;
  double n1 = r.a1.norm();
  if (n1 <= eps) throw DegenerateInput("gram_schmidt: first column collapsed");
  Vec3 b1 = r.a1 * (1.0 / n1);
  Vec3 u2 = r.a2 - b1 * dot(b1, r.a2);
  double n2 = u2.norm();
  if (n2 <= eps) throw DegenerateInput("gram_schmidt: columns (near-)parallel");
  Vec3 b2 = u2 * (1.0 / n2);
  Vec3 b3 = cross(b1, b2);
  Mat3 m;
  m.a = {b1.x, b2.x, b3.x, b1.y, b2.y, b3.y, b1.z, b2.z, b3.z};
  return m;
}

Rot6D sixd_from_matrix(const Mat3& R) { return {R.col(0), R.col(1)}; }

double geodesic_angle(const Mat3& r1, const Mat3& r2) {
  // tr(R1ᵀR2) as an elementwise product sum; the fixed order makes the
  // result exactly symmetric in (r1, r2).
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += r1.a[i] * r2.a[i];
  return std::acos(std::clamp((s - 1.0) / 2.0, -1.0, 1.0));
}

double geodesic_angle(const Quat& a, const Quat& b) {
  return geodesic_angle(a.matrix(), b.matrix());
}

namespace {

Mat3 quat_block_matrix(std::span<const double> q) {
  double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  if (n <= 1e-8) throw DegenerateInput("quaternion block collapsed");
  Quat u{q[0] / n, q[1] / n, q[2] / n, q[3] / n};
  return u.matrix();
}

Mat3 sixd_block_matrix(std::span<const double> s) {
  return gram_schmidt({{s[0], s[1], s[2]}, {s[3], s[4], s[5]}});
}

}  // namespace

double rotation_loss(std::span<const double> pred, std::span<const double> target,
                     RotationLossSpec spec) {
  const size_t bd = rot_block_dim(spec.repr);
  if (pred.size() != 2 * bd || target.size() != 2 * bd)
    throw std::invalid_argument("rotation_loss: block size mismatch");

  double sse = 0.0;
  if (spec.metric == RotMetric::MSE) {
    for (int arm = 0; arm < 2; ++arm) {
      auto p = pred.subspan(arm * bd, bd);
      auto t = target.subspan(arm * bd, bd);
      double sign = 1.0;
      if (spec.repr == RotRepr::Quaternion) {
        double d = 0.0;
        for (size_t i = 0; i < bd; ++i) d += p[i] * t[i];
        if (d < 0) sign = -1.0;
      }
      for (size_t i = 0; i < bd; ++i) {
        double e = p[i] - sign * t[i];
        sse += e * e;
      }
    }
    return sse / double(2 * bd);
  }

  for (int arm = 0; arm < 2; ++arm) {
    auto p = pred.subspan(arm * bd, bd);
    auto t = target.subspan(arm * bd, bd);
    Mat3 Rp = spec.repr == RotRepr::Quaternion ? quat_block_matrix(p) : sixd_block_matrix(p);
    Mat3 Rt = spec.repr == RotRepr::Quaternion ? quat_block_matrix(t) : sixd_block_matrix(t);
    for (int i = 0; i < 9; ++i) {
      double e = Rp.a[i] - Rt.a[i];
      sse += e * e;
    }
  }
  return sse / 18.0;
}

void encode_pose9(const Pose& p, double* out) {
  out[0] = p.t.x;
  out[1] = p.t.y;
  out[2] = p.t.z;
  Mat3 R = p.q.matrix();
  Vec3 c0 = R.col(0), c1 = R.col(1);
  out[3] = c0.x;
  out[4] = c0.y;
  out[5] = c0.z;
  out[6] = c1.x;
  out[7] = c1.y;
  out[8] = c1.z;
}

Pose decode_pose9(const double* in) {
  Mat3 R = gram_schmidt({{in[3], in[4], in[5]}, {in[6], in[7], in[8]}});
  return {{in[0], in[1], in[2]}, Quat::from_matrix(R)};
}

ActionVec ActionVec::encode(const Pose& left, const Pose& right) {
  ActionVec a;
  encode_pose9(left, a.v.data());
  encode_pose9(right, a.v.data() + 9);
  return a;
}

std::pair<Pose, Pose> ActionVec::decode() const {
  return {decode_pose9(v.data()), decode_pose9(v.data() + 9)};
}

bool success_check(const Pose& rel, const Pose& target, int symmetry_order,
                   double trans_tol, double rot_tol) {
  if (symmetry_order != 1 && symmetry_order != 2 && symmetry_order != 4)
    throw std::invalid_argument("success_check: symmetry order must be 1, 2 or 4");
  Mat3 Rrel = rel.q.matrix();
  for (int j = 0; j < symmetry_order; ++j) {
    double theta = j * 2.0 * kPi / symmetry_order;
    Pose cand = target.compose({{0, 0, 0}, Quat::rot_z(theta)});
    if ((rel.t - cand.t).norm() <= trans_tol &&
        geodesic_angle(Rrel, cand.q.matrix()) <= rot_tol)
      return true;
  }
  return false;
}

}  // namespace geopeg::geom
