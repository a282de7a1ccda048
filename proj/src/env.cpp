#include "geopeg/env.hpp"

#include <optional>

#include "geopeg/rng.hpp"

namespace geopeg::env {

namespace {
// substream tags for offset sampling
constexpr uint64_t kArmLeft = 0x4c, kArmRight = 0x52;
constexpr uint64_t kFieldDx = 1, kFieldDz = 2, kFieldRy = 3, kFieldRz = 4;
}  // namespace

TaskVariation TaskVariation::from_name(const std::string& name) {
  if (name == "none") return {};
  if (name == "xt") return {true, false, false, false};
  if (name == "zt") return {false, true, false, false};
  if (name == "yr") return {false, false, true, false};
  if (name == "zr") return {false, false, false, true};
  if (name == "xtzr") return {true, false, false, true};
  if (name == "ztzr") return {false, true, false, true};
  if (name == "yrzr") return {false, false, true, true};
  if (name == "xztyzr") return {true, true, true, true};
  throw std::invalid_argument("unknown task variation: " + name);
}

std::string TaskVariation::name() const {
  if (xt && zt && yr && zr) return "xztyzr";
  std::string n;
  if (xt) n += "xt";
  if (zt) n += "zt";
  if (yr) n += "yr";
  if (zr) n += "zr";
  return n.empty() ? "none" : n;
}

const std::vector<std::string>& TaskVariation::all_names() {
  static const std::vector<std::string> names = {"xt",   "zt",   "yr",   "zr",
                                                 "xtzr", "ztzr", "yrzr", "xztyzr"};
  return names;
}

ColorMode color_mode_from_name(const std::string& name) {
  if (name == "original") return ColorMode::Original;
  if (name == "colored") return ColorMode::Colored;
  throw std::invalid_argument("unknown color mode: " + name);
}

std::string color_mode_name(ColorMode mode) {
  return mode == ColorMode::Original ? "original" : "colored";
}

ControlMode control_mode_from_name(const std::string& name) {
  if (name == "absolute") return ControlMode::Absolute;
  if (name == "delta") return ControlMode::Delta;
  throw std::invalid_argument("unknown control mode: " + name);
}

std::string control_mode_name(ControlMode mode) {
  return mode == ControlMode::Absolute ? "absolute" : "delta";
}

Pose GraspOffset::pose() const {
  return {{dx, 0.0, dz}, Quat::rot_y(ry) * Quat::rot_z(rz)};
}

Pose insertion_target(const shapes::ObjectPair& pair) {
  return {{0.0, 0.0, pair.base_size}, Quat::rot_y(geom::kPi)};
}

Env::Env(TaskVariation variation, shapes::ObjectPair pair, ObsConfig obs)
    : variation_(variation), obs_(obs) {
  if (obs_.n_views != 0 && obs_.n_views != 1 && obs_.n_views != 3)
    throw std::invalid_argument("n_views must be 0, 1 or 3");
  state_.pair = std::move(pair);
}

Observation Env::reset(uint64_t seed) {
  state_.left_gripper = layout::kShowLeft;
  state_.right_gripper = layout::kShowRight;
  state_.step_count = 0;
  state_.rng_seed = seed;
  state_.done = false;
  state_.success = false;

  auto sample = [&](uint64_t arm) {
    GraspOffset o;
    if (variation_.xt) o.dx = Rng(mix(seed, arm, kFieldDx)).uniform(-0.01, 0.01);
    if (variation_.zt) o.dz = Rng(mix(seed, arm, kFieldDz)).uniform(-0.01, 0.01);
    if (variation_.yr)
      o.ry = Rng(mix(seed, arm, kFieldRy)).uniform(geom::radians(-11.25), geom::radians(11.25));
    if (variation_.zr)
      o.rz = double(Rng(mix(seed, arm, kFieldRz)).range(4)) * (geom::kPi / 2.0);
    return o;
  };
  state_.left_offset = sample(kArmLeft);
  state_.right_offset = sample(kArmRight);
  return observe();
}

StepResult Env::step(const ActionVec& action, ControlMode mode) {
  if (state_.done) throw EpisodeFinished("step() after the episode finished");

  auto apply = [&](Pose& cur, const double* block) {
    Vec3 t{block[0], block[1], block[2]};
    std::optional<Quat> q;
    try {
      q = Quat::from_matrix(
          geom::gram_schmidt({{block[3], block[4], block[5]}, {block[6], block[7], block[8]}}));
    } catch (const geom::DegenerateInput&) {
      // collapsed rotation output: hold the current orientation
    }
    if (mode == ControlMode::Absolute) {
      Vec3 d = t - cur.t;
      double n = d.norm();
      if (n > layout::kMaxStepTrans) t = cur.t + d * (layout::kMaxStepTrans / n);
      Quat target = q.value_or(cur.q);
      double ang = geom::geodesic_angle(cur.q, target);
      if (ang > layout::kMaxStepRot)
        target = geom::slerp(cur.q, target, layout::kMaxStepRot / ang);
      cur = Pose{t, target};
    } else {
      cur = cur.compose(Pose{t, q.value_or(Quat::identity())});
    }
  };
  apply(state_.left_gripper, action.v.data());
  apply(state_.right_gripper, action.v.data() + 9);

  ++state_.step_count;
  state_.success = geom::success_check(state_.relative(), insertion_target(state_.pair),
                                       state_.pair.shape.symmetry_order);
  state_.done = state_.success || state_.step_count >= kHorizon;
  return {observe(), state_.done, state_.success};
}

Observation Env::observe() const {
  Observation o;
  o.vec.resize(obs_.vec_dim());
  geom::encode_pose9(state_.left_gripper, o.vec.data());
  geom::encode_pose9(state_.right_gripper, o.vec.data() + 9);
  if (obs_.oracle) {
    geom::encode_pose9(state_.left_offset.pose(), o.vec.data() + 18);
    geom::encode_pose9(state_.right_offset.pose(), o.vec.data() + 27);
  }
  if (obs_.n_views >= 1) o.views.push_back(render(state_, View::Top, obs_.resolution, obs_.color));
  if (obs_.n_views == 3) {
    o.views.push_back(render(state_, View::WristLeft, obs_.resolution, obs_.color));
    o.views.push_back(render(state_, View::WristRight, obs_.resolution, obs_.color));
  }
  return o;
}

}  // namespace geopeg::env
