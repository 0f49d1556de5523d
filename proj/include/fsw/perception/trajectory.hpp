#pragma once

#include <vector>

#include "fsw/core/result.hpp"
#include "fsw/core/types.hpp"

namespace fsw::perception {

enum class SegmentKind { Hover, LinearTo, OrbitAbout };

struct TrajectorySegment {
  double start_s = 0.0;
  double end_s = 0.0;
  SegmentKind kind = SegmentKind::Hover;
  // Hover: target = held position, yaw_deg held.
  // LinearTo: target = end position, yaw_deg = end yaw; start pose is the
  //   previous segment's end pose (position/yaw interpolate linearly).
  // OrbitAbout: target = circle center; angular_rate_deg_s sets the sweep;
  //   yaw faces the center.
  Vec3 target{0.0, 0.0, 0.0};
  double yaw_deg = 0.0;
  double angular_rate_deg_s = 0.0;
};

enum class TrajectoryError { OutOfRange, Empty, NonContiguous };

struct TrajectoryPose {
  Vec3 position{0.0, 0.0, 0.0};
  Quaternion orientation;  // yaw-only rotation
};

// Piecewise pose profile over a contiguous time span.
class Trajectory {
 public:
  static Result<Trajectory, TrajectoryError> make(
      std::vector<TrajectorySegment> segments);

  Result<TrajectoryPose, TrajectoryError> eval(double t) const;

  double start_s() const { return segments_.front().start_s; }
  double end_s() const { return segments_.back().end_s; }

 private:
  struct SegmentStart {
    Vec3 position;
    double yaw_deg;
  };
  std::vector<TrajectorySegment> segments_;
  std::vector<SegmentStart> starts_;  // pose entering each segment
};

Quaternion yaw_to_quaternion(double yaw_deg);

}  // namespace fsw::perception
