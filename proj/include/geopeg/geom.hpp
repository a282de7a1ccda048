#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace geopeg::geom {

constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double radians(double deg) { return deg * kPi / 180.0; }
constexpr double degrees(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3 normalized() const {
    double n = norm();
    return {x / n, y / n, z / n};
  }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double& operator()(int r, int c) { return a[r * 3 + c]; }
  double operator()(int r, int c) const { return a[r * 3 + c]; }
  static Mat3 identity() { return {}; }
  Mat3 transpose() const;
  Mat3 operator*(const Mat3& o) const;
  Vec3 operator*(const Vec3& v) const;
  Vec3 col(int c) const { return {a[c], a[3 + c], a[6 + c]}; }
  double det() const;
};

// Unit quaternion, (w, x, y, z) storage order everywhere, including files.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quat identity() { return {}; }
  static Quat axis_angle(const Vec3& axis, double angle);
  static Quat rot_x(double a) { return axis_angle({1, 0, 0}, a); }
  static Quat rot_y(double a) { return axis_angle({0, 1, 0}, a); }
  static Quat rot_z(double a) { return axis_angle({0, 0, 1}, a); }
  static Quat from_matrix(const Mat3& R);

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quat normalized() const;
  Quat conjugate() const { return {w, -x, -y, -z}; }
  Quat operator*(const Quat& o) const;  // Hamilton product, renormalized
  Vec3 rotate(const Vec3& v) const;
  Mat3 matrix() const;
  double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
};

Quat slerp(const Quat& a, const Quat& b, double t);

// SE(3) element: rotate by q, then translate by t.
struct Pose {
  Vec3 t;
  Quat q;

  Pose() = default;
  Pose(const Vec3& t_, const Quat& q_) : t(t_), q(q_.normalized()) {}
  static Pose identity() { return {}; }
  Pose compose(const Pose& o) const;  // this ∘ o
  Pose inverse() const;
  Vec3 apply(const Vec3& p) const { return q.rotate(p) + t; }
};

// The two raw rotation-matrix columns of the 6D representation; network
// outputs land here unnormalized.
struct Rot6D {
  Vec3 a1, a2;
};

// Raised when a 6D block (or quaternion) is too collapsed to define a
// rotation; an untrainable network output, never silently patched over in
// the math layer.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// b1 = a1/|a1|, b2 = normalize(a2 - (b1.a2) b1), b3 = b1 x b2.
Mat3 gram_schmidt(const Rot6D& r);
Rot6D sixd_from_matrix(const Mat3& R);

// arccos(clamp((tr(R1ᵀR2) - 1)/2, -1, 1)), in [0, pi]. Exactly symmetric in
// its arguments.
double geodesic_angle(const Mat3& r1, const Mat3& r2);
double geodesic_angle(const Quat& a, const Quat& b);

enum class RotRepr { Quaternion, SixD };
enum class RotMetric { MSE, Frobenius };

struct RotationLossSpec {
  RotRepr repr = RotRepr::SixD;
  RotMetric metric = RotMetric::MSE;
};

inline size_t rot_block_dim(RotRepr r) { return r == RotRepr::Quaternion ? 4 : 6; }

// pred/target hold both arms' rotation blocks back to back (8 quaternion or
// 12 six-d values). MSE: mean squared error over the raw values, with the
// target quaternion sign-flipped per arm onto the predicted hemisphere.
// Frobenius: rotation matrices are reconstructed (Gram-Schmidt for 6D,
// normalization for quaternions) and the squared entry differences are
// averaged over the 18 entries.
double rotation_loss(std::span<const double> pred, std::span<const double> target,
                     RotationLossSpec spec);

// 18-vector [left t(3) ++ sixd(6)] ++ [right t(3) ++ sixd(6)] where sixd is
// the first two rotation-matrix columns.
struct ActionVec {
  std::array<double, 18> v{};

  static ActionVec encode(const Pose& left, const Pose& right);
  std::pair<Pose, Pose> decode() const;  // throws DegenerateInput on collapsed blocks
};

// Pose as 9 values (t ++ first two rotation columns); the building block of
// ActionVec and of observation vectors.
void encode_pose9(const Pose& p, double* out);
Pose decode_pose9(const double* in);

constexpr double kSuccessTransTol = 0.01;                  // 1 cm
constexpr double kSuccessRotTol = radians(5.0);            // 5 degrees

// True iff rel matches target composed with some Rz(j*360/k) about the
// insertion axis within the margins. k in {1, 2, 4}.
bool success_check(const Pose& rel, const Pose& target, int symmetry_order,
                   double trans_tol = kSuccessTransTol,
                   double rot_tol = kSuccessRotTol);

}  // namespace geopeg::geom
