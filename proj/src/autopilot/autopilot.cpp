#include "fsw/autopilot/autopilot.hpp"

#include <cmath>

namespace fsw::autopilot {

std::optional<FlightMode> mode_from_code(double code) {
  if (code == 0.0) return FlightMode::Stabilize;
  if (code == 4.0) return FlightMode::Guided;
  if (code == 16.0) return FlightMode::PosHold;
  if (code == 9.0) return FlightMode::Land;
  return std::nullopt;
}

double mode_to_code(FlightMode m) {
  switch (m) {
    case FlightMode::Stabilize: return 0.0;
    case FlightMode::Guided: return 4.0;
    case FlightMode::PosHold: return 16.0;
    case FlightMode::Land: return 9.0;
  }
  return 0.0;
}

namespace {

bool mode_transition_allowed(const AutopilotState& s, FlightMode to) {
  const FlightMode from = s.mode;
  if (from == to) return true;
  if (to == FlightMode::Land) return s.armed;
  switch (from) {
    case FlightMode::Stabilize: return to == FlightMode::Guided;
    case FlightMode::Guided:
      return to == FlightMode::Stabilize || to == FlightMode::PosHold;
    case FlightMode::PosHold: return to == FlightMode::Guided;
    case FlightMode::Land: return to == FlightMode::Stabilize && !s.armed;
  }
  return false;
}

}  // namespace

CommandAck handle_command(AutopilotState& state, const Command& cmd,
                          TimestampS now) {
  CommandAck ack{cmd.id, AckStatus::Rejected, now};
  if (cmd.args.size() != opcode_arity(cmd.opcode)) return ack;

  switch (cmd.opcode) {
    case Opcode::Arm:
      if (!state.armed) {
        state.armed = true;
        ack.status = AckStatus::Success;
      }
      break;
    case Opcode::Disarm:
      if (state.armed) {
        state.armed = false;
        ack.status = AckStatus::Success;
      }
      break;
    case Opcode::SetMode: {
      const auto mode = mode_from_code(cmd.args[0]);
      if (mode && mode_transition_allowed(state, *mode)) {
        state.mode = *mode;
        if (*mode == FlightMode::Land) state.setpoint[2] = 0.0;
        ack.status = AckStatus::Success;
      }
      break;
    }
    case Opcode::Takeoff:
      if (state.armed && state.mode == FlightMode::Guided) {
        state.setpoint = state.position;
        state.setpoint[2] = cmd.args[0];
        ack.status = AckStatus::Success;
      }
      break;
    case Opcode::Goto:
      if (state.armed && state.mode == FlightMode::Guided) {
        state.setpoint = {cmd.args[0], cmd.args[1], cmd.args[2]};
        ack.status = AckStatus::Success;
      }
      break;
    case Opcode::Land:
      if (state.armed) {
        state.mode = FlightMode::Land;
        state.setpoint[2] = 0.0;
        ack.status = AckStatus::Success;
      }
      break;
  }
  return ack;
}

void step_dynamics(AutopilotState& state, double dt) {
  if (dt < 0.0) throw NegativeDt();
  if (dt == 0.0) return;
  if (state.mode == FlightMode::Land) state.setpoint[2] = 0.0;
  for (int k = 0; k < 3; ++k) {
    state.position[k] +=
        state.tracking_gain * (state.setpoint[k] - state.position[k]) * dt;
  }
  const double err = wrap_deg(state.yaw_setpoint_deg - state.yaw_deg);
  state.yaw_deg = wrap_deg(state.yaw_deg + state.tracking_gain * err * dt);
}

CommandAck AutopilotSim::on_command(const Command& cmd, TimestampS now) {
  const FlightMode before = state_.mode;
  const CommandAck ack = handle_command(state_, cmd, now);
  if (state_.mode != before) emit(now, std::nullopt);
  emit(now, std::make_pair(ack.command_id, ack.status));
  return ack;
}

void AutopilotSim::step(TimestampS virtual_now) {
  const double dt = stepped_ ? virtual_now - last_step_s_ : 0.0;
  stepped_ = true;
  last_step_s_ = virtual_now;
  if (dt > 0.0) step_dynamics(state_, dt);

  if (state_.mode == FlightMode::Land && state_.armed &&
      state_.position[2] <= kLandedAltitudeM) {
    state_.armed = false;
    emit(virtual_now, std::nullopt);
  }

  while (next_log_s_ <= virtual_now) {
    emit(next_log_s_, std::nullopt);
    next_log_s_ += kLogPeriodS;
  }
}

void AutopilotSim::emit(TimestampS t,
                        std::optional<std::pair<uint32_t, AckStatus>> ack) {
  // Mission log timestamps are non-decreasing even when a periodic entry
  // was due before the current event.
  if (!log_.empty() && t < log_.back().t) t = log_.back().t;
  log_.push_back(MissionEntry{t, state_.mode, health_, ack});
}

std::vector<MissionEntry> AutopilotSim::take_log() {
  std::vector<MissionEntry> out;
  out.swap(log_);
  return out;
}

}  // namespace fsw::autopilot
