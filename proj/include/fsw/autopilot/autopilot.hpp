#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fsw/bridge/payloads.hpp"
#include "fsw/core/types.hpp"

namespace fsw::autopilot {

using bridge::HealthLevel;

struct NegativeDt : std::invalid_argument {
  NegativeDt() : std::invalid_argument("dt must be >= 0") {}
};

struct AutopilotState {
  FlightMode mode = FlightMode::Stabilize;
  bool armed = false;
  Vec3 position{0.0, 0.0, 0.0};
  Vec3 setpoint{0.0, 0.0, 0.0};
  double yaw_deg = 0.0;
  double yaw_setpoint_deg = 0.0;
  double tracking_gain = 1.0;  // 1/s
};

struct MissionEntry {
  TimestampS t = 0.0;
  FlightMode mode = FlightMode::Stabilize;
  HealthLevel health = HealthLevel::Healthy;
  std::optional<std::pair<uint32_t, AckStatus>> last_ack;
};

// SetMode argument codes (ArduPilot numbering).
std::optional<FlightMode> mode_from_code(double code);
double mode_to_code(FlightMode m);

// Applies one command to the state machine. Disallowed requests are
// acked Rejected, never faults. Allowed mode transitions:
// Stabilize<->Guided, Guided<->PosHold, any armed -> Land, and
// Land -> Stabilize only once disarmed.
CommandAck handle_command(AutopilotState& state, const Command& cmd,
                          TimestampS now);

// First-order setpoint tracking: p += gain*(sp - p)*dt per axis, yaw with
// shortest-arc error. dt = 0 is the identity.
void step_dynamics(AutopilotState& state, double dt);

// Wraps the state machine with mission-log emission: one entry per step
// at the logging cadence plus one per mode transition and per ack, and
// auto-disarm once landed (z <= 0.01 m in Land mode).
class AutopilotSim {
 public:
  static constexpr double kLogPeriodS = 0.1;  // 10 Hz
  static constexpr double kLandedAltitudeM = 0.01;

  explicit AutopilotSim(AutopilotState initial = {}) : state_(initial) {}

  CommandAck on_command(const Command& cmd, TimestampS now);

  // Advances dynamics to virtual_now and emits any due periodic entries.
  void step(TimestampS virtual_now);

  void set_health(HealthLevel h) { health_ = h; }

  const AutopilotState& state() const { return state_; }
  const std::vector<MissionEntry>& log() const { return log_; }
  std::vector<MissionEntry> take_log();

 private:
  void emit(TimestampS t, std::optional<std::pair<uint32_t, AckStatus>> ack);

  AutopilotState state_;
  HealthLevel health_ = HealthLevel::Healthy;
  std::vector<MissionEntry> log_;
  double last_step_s_ = 0.0;
  double next_log_s_ = 0.0;
  bool stepped_ = false;
};

}  // namespace fsw::autopilot
