#include "fsw/bridge/payloads.hpp"

namespace fsw::bridge {

std::vector<uint8_t> encode_pose_payload(const PoseSample& pose) {
  std::vector<uint8_t> out;
  out.reserve(56);
  put_f64(out, pose.position[0]);
  put_f64(out, pose.position[1]);
  put_f64(out, pose.position[2]);
  put_f64(out, pose.orientation.x);
  put_f64(out, pose.orientation.y);
  put_f64(out, pose.orientation.z);
  put_f64(out, pose.orientation.w);
  return out;
}

std::optional<PoseSample> decode_pose_payload(std::span<const uint8_t> bytes,
                                              uint64_t send_time_ns) {
  if (bytes.size() != 56) return std::nullopt;
  PoseSample pose;
  pose.t = static_cast<double>(send_time_ns) * 1e-9;
  pose.position = {get_f64(bytes, 0), get_f64(bytes, 8), get_f64(bytes, 16)};
  pose.orientation = {get_f64(bytes, 24), get_f64(bytes, 32),
                      get_f64(bytes, 40), get_f64(bytes, 48)};
  return pose;
}

std::vector<uint8_t> encode_command_payload(const Command& cmd) {
  std::vector<uint8_t> out;
  put_u32(out, cmd.id);
  out.push_back(static_cast<uint8_t>(cmd.opcode));
  out.push_back(static_cast<uint8_t>(cmd.args.size()));
  for (double a : cmd.args) put_f64(out, a);
  put_f64(out, cmd.issued_at);
  return out;
}

std::optional<Command> decode_command_payload(std::span<const uint8_t> bytes) {
  if (bytes.size() < 6) return std::nullopt;
  Command cmd;
  cmd.id = get_u32(bytes, 0);
  const uint8_t op = bytes[4];
  if (op > static_cast<uint8_t>(Opcode::Land)) return std::nullopt;
  cmd.opcode = static_cast<Opcode>(op);
  const size_t argc = bytes[5];
  if (bytes.size() != 6 + 8 * argc + 8) return std::nullopt;
  for (size_t i = 0; i < argc; ++i) {
    cmd.args.push_back(get_f64(bytes, 6 + 8 * i));
  }
  cmd.issued_at = get_f64(bytes, 6 + 8 * argc);
  return cmd;
}

std::vector<uint8_t> encode_ack_payload(const CommandAck& ack) {
  std::vector<uint8_t> out;
  put_u32(out, ack.command_id);
  out.push_back(static_cast<uint8_t>(ack.status));
  put_f64(out, ack.ack_at);
  return out;
}

std::optional<CommandAck> decode_ack_payload(std::span<const uint8_t> bytes) {
  if (bytes.size() != 13) return std::nullopt;
  CommandAck ack;
  ack.command_id = get_u32(bytes, 0);
  if (bytes[4] > static_cast<uint8_t>(AckStatus::Timeout)) return std::nullopt;
  ack.status = static_cast<AckStatus>(bytes[4]);
  ack.ack_at = get_f64(bytes, 5);
  return ack;
}

std::vector<uint8_t> encode_flight_state_payload(const FlightStatePayload& fs) {
  std::vector<uint8_t> out;
  out.push_back(static_cast<uint8_t>(fs.mode));
  out.push_back(fs.armed ? 1 : 0);
  put_f64(out, fs.position[0]);
  put_f64(out, fs.position[1]);
  put_f64(out, fs.position[2]);
  put_f64(out, fs.yaw_deg);
  return out;
}

std::optional<FlightStatePayload> decode_flight_state_payload(
    std::span<const uint8_t> bytes) {
  if (bytes.size() != 34) return std::nullopt;
  if (bytes[0] > static_cast<uint8_t>(FlightMode::Land)) return std::nullopt;
  FlightStatePayload fs;
  fs.mode = static_cast<FlightMode>(bytes[0]);
  fs.armed = bytes[1] != 0;
  fs.position = {get_f64(bytes, 2), get_f64(bytes, 10), get_f64(bytes, 18)};
  fs.yaw_deg = get_f64(bytes, 26);
  return fs;
}

std::string_view format_health(HealthLevel h) {
  switch (h) {
    case HealthLevel::Healthy: return "HEALTHY";
    case HealthLevel::Degraded: return "DEGRADED";
    case HealthLevel::Fault: return "FAULT";
  }
  return "FAULT";
}

std::optional<HealthLevel> parse_health(std::string_view text) {
  if (text == "HEALTHY") return HealthLevel::Healthy;
  if (text == "DEGRADED") return HealthLevel::Degraded;
  if (text == "FAULT") return HealthLevel::Fault;
  return std::nullopt;
}

std::vector<uint8_t> encode_health_payload(HealthLevel level) {
  return {static_cast<uint8_t>(level)};
}

std::optional<HealthLevel> decode_health_payload(
    std::span<const uint8_t> bytes) {
  if (bytes.size() != 1) return std::nullopt;
  if (bytes[0] > static_cast<uint8_t>(HealthLevel::Fault)) return std::nullopt;
  return static_cast<HealthLevel>(bytes[0]);
}

std::vector<uint8_t> encode_resource_payload(const ResourceSample& r) {
  std::vector<uint8_t> out;
  put_f64(out, r.cpu_pct);
  put_f64(out, r.mem_mb);
  put_f64(out, r.bandwidth_kbps);
  return out;
}

std::optional<ResourceSample> decode_resource_payload(
    std::span<const uint8_t> bytes, uint64_t send_time_ns) {
  if (bytes.size() != 24) return std::nullopt;
  ResourceSample r;
  r.t = static_cast<double>(send_time_ns) * 1e-9;
  r.cpu_pct = get_f64(bytes, 0);
  r.mem_mb = get_f64(bytes, 8);
  r.bandwidth_kbps = get_f64(bytes, 16);
  return r;
}

}  // namespace fsw::bridge
