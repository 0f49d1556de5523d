#include "fsw/core/types.hpp"

#include <algorithm>
#include <cmath>

namespace fsw {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

bool all_finite(const PoseSample& s) {
  return std::isfinite(s.t) && std::isfinite(s.position[0]) &&
         std::isfinite(s.position[1]) && std::isfinite(s.position[2]) &&
         std::isfinite(s.orientation.x) && std::isfinite(s.orientation.y) &&
         std::isfinite(s.orientation.z) && std::isfinite(s.orientation.w);
}

}  // namespace

double Quaternion::norm() const {
  return std::sqrt(x * x + y * y + z * z + w * w);
}

double wrap_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

Result<EulerAngles, PoseError> quat_to_euler(const Quaternion& q) {
  if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z) ||
      !std::isfinite(q.w)) {
    return PoseError::NonFinite;
  }
  if (std::abs(q.norm() - 1.0) > kQuatNormTolerance) {
    return PoseError::NonUnitQuaternion;
  }

  EulerAngles e;
  const double sin_pitch = 2.0 * (q.w * q.y - q.z * q.x);
  // Gimbal lock: within ~1e-6 rad of +/-90 deg pitch.
  if (std::abs(sin_pitch) >= 1.0 - 1e-12) {
    e.pitch_deg = std::copysign(90.0, sin_pitch);
    e.roll_deg = 0.0;
    e.yaw_deg = wrap_deg(2.0 * std::atan2(q.z, q.w) * kRadToDeg);
    return e;
  }
  e.pitch_deg = std::asin(sin_pitch) * kRadToDeg;
  e.roll_deg = std::atan2(2.0 * (q.w * q.x + q.y * q.z),
                          1.0 - 2.0 * (q.x * q.x + q.y * q.y)) *
               kRadToDeg;
  e.yaw_deg = std::atan2(2.0 * (q.w * q.z + q.x * q.y),
                         1.0 - 2.0 * (q.y * q.y + q.z * q.z)) *
              kRadToDeg;
  return e;
}

std::optional<PoseError> validate_pose(const PoseSample& s) {
  if (!all_finite(s)) return PoseError::NonFinite;
  if (std::abs(s.orientation.norm() - 1.0) > kQuatNormTolerance) {
    return PoseError::NonUnitQuaternion;
  }
  return std::nullopt;
}

std::optional<FlightMode> parse_mode(std::string_view text) {
  if (text == "STABILIZE") return FlightMode::Stabilize;
  if (text == "GUIDED") return FlightMode::Guided;
  if (text == "POSHOLD") return FlightMode::PosHold;
  if (text == "LAND") return FlightMode::Land;
  return std::nullopt;
}

std::string_view format_mode(FlightMode m) {
  switch (m) {
    case FlightMode::Stabilize: return "STABILIZE";
    case FlightMode::Guided: return "GUIDED";
    case FlightMode::PosHold: return "POSHOLD";
    case FlightMode::Land: return "LAND";
  }
  return "STABILIZE";
}

std::string_view format_ack_status(AckStatus s) {
  switch (s) {
    case AckStatus::Success: return "SUCCESS";
    case AckStatus::Rejected: return "REJECTED";
    case AckStatus::Timeout: return "TIMEOUT";
  }
  return "TIMEOUT";
}

std::optional<AckStatus> parse_ack_status(std::string_view text) {
  if (text == "SUCCESS") return AckStatus::Success;
  if (text == "REJECTED") return AckStatus::Rejected;
  if (text == "TIMEOUT") return AckStatus::Timeout;
  return std::nullopt;
}

size_t opcode_arity(Opcode op) {
  switch (op) {
    case Opcode::SetMode: return 1;
    case Opcode::Takeoff: return 1;
    case Opcode::Goto: return 3;
    default: return 0;
  }
}

std::string_view format_opcode(Opcode op) {
  switch (op) {
    case Opcode::Arm: return "ARM";
    case Opcode::Disarm: return "DISARM";
    case Opcode::SetMode: return "SET_MODE";
    case Opcode::Takeoff: return "TAKEOFF";
    case Opcode::Goto: return "GOTO";
    case Opcode::Land: return "LAND";
  }
  return "ARM";
}

std::optional<Opcode> parse_opcode(std::string_view text) {
  if (text == "ARM") return Opcode::Arm;
  if (text == "DISARM") return Opcode::Disarm;
  if (text == "SET_MODE") return Opcode::SetMode;
  if (text == "TAKEOFF") return Opcode::Takeoff;
  if (text == "GOTO") return Opcode::Goto;
  if (text == "LAND") return Opcode::Land;
  return std::nullopt;
}

}  // namespace fsw
