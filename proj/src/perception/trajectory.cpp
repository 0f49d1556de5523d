#include "fsw/perception/trajectory.hpp"

#include <cmath>

namespace fsw::perception {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

Quaternion yaw_to_quaternion(double yaw_deg) {
  const double half = 0.5 * yaw_deg * kDegToRad;
  return Quaternion{0.0, 0.0, std::sin(half), std::cos(half)};
}

Result<Trajectory, TrajectoryError> Trajectory::make(
    std::vector<TrajectorySegment> segments) {
  if (segments.empty()) return TrajectoryError::Empty;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].end_s <= segments[i].start_s) {
      return TrajectoryError::NonContiguous;
    }
    if (i > 0 && segments[i].start_s != segments[i - 1].end_s) {
      return TrajectoryError::NonContiguous;
    }
  }

  Trajectory traj;
  traj.segments_ = std::move(segments);
  traj.starts_.reserve(traj.segments_.size());

  // The first segment starts at its own target pose; each later segment
  // starts where the previous one ended.
  Vec3 pos = traj.segments_.front().target;
  double yaw = traj.segments_.front().yaw_deg;
  for (const auto& seg : traj.segments_) {
    traj.starts_.push_back({pos, yaw});
    switch (seg.kind) {
      case SegmentKind::Hover:
        pos = seg.target;
        yaw = seg.yaw_deg;
        break;
      case SegmentKind::LinearTo:
        pos = seg.target;
        yaw = seg.yaw_deg;
        break;
      case SegmentKind::OrbitAbout: {
        const double span = seg.end_s - seg.start_s;
        const double dx = pos[0] - seg.target[0];
        const double dy = pos[1] - seg.target[1];
        const double r = std::hypot(dx, dy);
        const double theta0 = std::atan2(dy, dx);
        const double theta =
            theta0 + seg.angular_rate_deg_s * kDegToRad * span;
        pos = {seg.target[0] + r * std::cos(theta),
               seg.target[1] + r * std::sin(theta), pos[2]};
        yaw = wrap_deg((theta + M_PI) / kDegToRad);
        break;
      }
    }
  }
  return traj;
}

Result<TrajectoryPose, TrajectoryError> Trajectory::eval(double t) const {
  if (t < start_s() || t > end_s()) return TrajectoryError::OutOfRange;

  size_t idx = segments_.size() - 1;
  for (size_t i = 0; i < segments_.size(); ++i) {
    if (t < segments_[i].end_s) {
      idx = i;
      break;
    }
  }
  const auto& seg = segments_[idx];
  const auto& entry = starts_[idx];

  TrajectoryPose out;
  switch (seg.kind) {
    case SegmentKind::Hover:
      out.position = seg.target;
      out.orientation = yaw_to_quaternion(seg.yaw_deg);
      break;
    case SegmentKind::LinearTo: {
      const double u = (t - seg.start_s) / (seg.end_s - seg.start_s);
      for (int k = 0; k < 3; ++k) {
        out.position[k] = entry.position[k] +
                          u * (seg.target[k] - entry.position[k]);
      }
      const double dyaw = wrap_deg(seg.yaw_deg - entry.yaw_deg);
      out.orientation = yaw_to_quaternion(wrap_deg(entry.yaw_deg + u * dyaw));
      break;
    }
    case SegmentKind::OrbitAbout: {
      const double dx = entry.position[0] - seg.target[0];
      const double dy = entry.position[1] - seg.target[1];
      const double r = std::hypot(dx, dy);
      const double theta0 = std::atan2(dy, dx);
      const double theta =
          theta0 + seg.angular_rate_deg_s * kDegToRad * (t - seg.start_s);
      out.position = {seg.target[0] + r * std::cos(theta),
                      seg.target[1] + r * std::sin(theta), entry.position[2]};
      // Yaw faces the orbit center.
      out.orientation = yaw_to_quaternion(wrap_deg((theta + M_PI) / kDegToRad));
      break;
    }
  }
  return out;
}

}  // namespace fsw::perception
