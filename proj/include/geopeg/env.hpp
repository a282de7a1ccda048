#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "geopeg/geom.hpp"
#include "geopeg/shapes.hpp"

namespace geopeg::env {

using geom::ActionVec;
using geom::Pose;
using geom::Quat;
using geom::Vec3;

// Grasp-variation axes. The eight named task variations are xt, zt, yr, zr,
// xtzr, ztzr, yrzr and xztyzr (all four); "none" disables everything.
struct TaskVariation {
  bool xt = false, zt = false, yr = false, zr = false;

  static TaskVariation from_name(const std::string& name);
  std::string name() const;
  static const std::vector<std::string>& all_names();  // the 8 named variations
};

// Object-in-gripper perturbation, in the gripper frame (local Z is the
// approach/insertion axis). Disabled axes stay exactly 0.
struct GraspOffset {
  double dx = 0.0;  // [-0.01, 0.01] m
  double dz = 0.0;  // [-0.01, 0.01] m
  double ry = 0.0;  // [-11.25, 11.25] deg
  double rz = 0.0;  // {0, 90, 180, 270} deg

  Pose pose() const;  // Trans(dx, 0, dz) then Ry(ry) Rz(rz)
};

enum class ColorMode { Original, Colored };
enum class View { Top, WristLeft, WristRight };
enum class ControlMode { Absolute, Delta };

ColorMode color_mode_from_name(const std::string& name);
std::string color_mode_name(ColorMode mode);
ControlMode control_mode_from_name(const std::string& name);
std::string control_mode_name(ControlMode mode);

struct Image {
  int res = 0;
  std::vector<uint8_t> px;  // row-major, row 0 at the top of the view
};

struct ObsConfig {
  bool oracle = false;  // append both grasp-offset transforms to the vector
  int n_views = 0;      // 0, 1 (top) or 3 (top + both wrists)
  int resolution = 64;
  ColorMode color = ColorMode::Original;

  size_t vec_dim() const { return oracle ? 36 : 18; }
};

struct Observation {
  std::vector<double> vec;  // both gripper poses as pos+6D (++ offsets when oracle)
  std::vector<Image> views;
};

struct EnvState {
  Pose left_gripper;   // holds the peg
  Pose right_gripper;  // holds the hole
  GraspOffset left_offset, right_offset;
  shapes::ObjectPair pair;
  int step_count = 0;
  uint64_t rng_seed = 0;
  bool done = false;
  bool success = false;

  // Object poses are derived, never stored.
  Pose peg_pose() const { return left_gripper.compose(left_offset.pose()); }
  Pose hole_pose() const { return right_gripper.compose(right_offset.pose()); }
  Pose relative() const { return hole_pose().inverse().compose(peg_pose()); }
};

class EpisodeFinished : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed world layout, workspace frame at the table center. At the show pose
// both grippers point their object faces up at the top camera; for align and
// insert they turn to face each other along the X axis.
namespace layout {
inline const Pose kShowLeft{{-0.20, 0.0, 0.30}, Quat::identity()};
inline const Pose kShowRight{{0.20, 0.0, 0.30}, Quat::identity()};
inline const Pose kAlignRight{{0.10, 0.0, 0.30}, Quat::rot_y(-geom::kPi / 2)};
constexpr double kAlignFaceGap = 0.06;   // peg face to hole face at align
constexpr double kInsertAdvance = 0.03;  // per-arm closing travel during insert
constexpr double kMaxStepTrans = 0.05;   // absolute-mode per-step clamps
inline const double kMaxStepRot = geom::radians(30.0);
constexpr double kTopCamHeight = 0.90;
constexpr double kTopWindow = 0.60;    // orthographic width, meters
constexpr double kWristBack = 0.10;    // camera sits behind the gripper
constexpr double kWristWindow = 0.30;
constexpr double kNearCull = 0.15;     // objects closer than this are not drawn
}  // namespace layout

inline constexpr int kHorizon = 80;

// Ground-truth hole->peg transform at completion: base faces flush 0.08 m
// apart along the insertion axis, peg flipped to face the hole. Unique up to
// the shape's symmetry set.
Pose insertion_target(const shapes::ObjectPair& pair);

struct StepResult {
  Observation obs;
  bool done = false;
  bool success = false;
};

class Env {
 public:
  Env(TaskVariation variation, shapes::ObjectPair pair, ObsConfig obs);

  // Grippers to the show poses; offsets drawn from per-(seed, arm, field)
  // substreams so one axis never shifts another's draws.
  Observation reset(uint64_t seed);

  // Absolute mode clamps each arm to 0.05 m / 30 deg per step and holds the
  // current orientation when a rotation block is degenerate; delta mode
  // composes the decoded action onto the current poses unclamped.
  StepResult step(const ActionVec& action, ControlMode mode = ControlMode::Absolute);

  Observation observe() const;
  const EnvState& state() const { return state_; }
  const TaskVariation& variation() const { return variation_; }
  const ObsConfig& obs_config() const { return obs_; }

 private:
  TaskVariation variation_;
  ObsConfig obs_;
  EnvState state_;
};

// Orthographic silhouette rasterization of a state snapshot: each visible
// object contributes its base silhouette and its extrusion/intrusion face
// polygon. Resolution 16..256.
Image render(const EnvState& state, View view, int resolution, ColorMode mode);

void write_pgm(const Image& img, const std::filesystem::path& path);

}  // namespace geopeg::env
