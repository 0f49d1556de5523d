#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsw/core/result.hpp"

namespace fsw {

// Seconds since epoch (raw logs) or since mission start (analysis).
using TimestampS = double;

using Vec3 = std::array<double, 3>;

// Unit quaternion, scalar-last (qx, qy, qz, qw).
struct Quaternion {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  double norm() const;
};

struct PoseSample {
  TimestampS t = 0.0;
  Vec3 position{0.0, 0.0, 0.0};  // x forward, y lateral, z altitude [m]
  Quaternion orientation;
};

struct EulerAngles {
  double roll_deg = 0.0;   // [-180, 180]
  double pitch_deg = 0.0;  // [-90, 90]
  double yaw_deg = 0.0;    // [-180, 180]
};

enum class FlightMode : uint8_t { Stabilize, Guided, PosHold, Land };

enum class Opcode : uint8_t { Arm, Disarm, SetMode, Takeoff, Goto, Land };

struct Command {
  uint32_t id = 0;
  Opcode opcode = Opcode::Arm;
  std::vector<double> args;
  TimestampS issued_at = 0.0;
};

enum class AckStatus : uint8_t { Success, Rejected, Timeout };

struct CommandAck {
  uint32_t command_id = 0;
  AckStatus status = AckStatus::Success;
  TimestampS ack_at = 0.0;
};

struct ResourceSample {
  TimestampS t = 0.0;
  double cpu_pct = 0.0;
  double mem_mb = 0.0;
  double bandwidth_kbps = 0.0;
};

enum class PoseError : uint8_t { NonFinite, NonUnitQuaternion };

// Quaternion norm must be within this of 1; covers float drift from
// serialization without masking corruption.
inline constexpr double kQuatNormTolerance = 1e-6;

// Intrinsic Z-Y-X (yaw-pitch-roll) aerospace convention, degrees.
// At |pitch| = 90 deg the roll axis degenerates; roll is reported as 0 and
// the residual rotation folded into yaw.
Result<EulerAngles, PoseError> quat_to_euler(const Quaternion& q);

std::optional<PoseError> validate_pose(const PoseSample& s);

std::optional<FlightMode> parse_mode(std::string_view text);
std::string_view format_mode(FlightMode m);

std::string_view format_ack_status(AckStatus s);
std::optional<AckStatus> parse_ack_status(std::string_view text);

// Expected argument count for each opcode (SetMode 1, Takeoff 1, Goto 3).
size_t opcode_arity(Opcode op);
std::string_view format_opcode(Opcode op);
std::optional<Opcode> parse_opcode(std::string_view text);

// Wraps an angle in degrees to (-180, 180].
double wrap_deg(double deg);

}  // namespace fsw
