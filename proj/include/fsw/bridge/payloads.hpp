#pragma once

#include <optional>

#include "fsw/bridge/frame.hpp"
#include "fsw/core/types.hpp"

namespace fsw::bridge {

// Typed payload schemas for each msg_type. Sample/event timestamps ride in
// the frame header's send_time_ns; payloads carry only the body fields.

// PoseTelemetry: x,y,z,qx,qy,qz,qw as 7 little-endian binary64 (56 bytes).
std::vector<uint8_t> encode_pose_payload(const PoseSample& pose);
std::optional<PoseSample> decode_pose_payload(std::span<const uint8_t> bytes,
                                              uint64_t send_time_ns);

// Command: id u32, opcode u8, argc u8, args binary64 each, issued_at binary64.
std::vector<uint8_t> encode_command_payload(const Command& cmd);
std::optional<Command> decode_command_payload(std::span<const uint8_t> bytes);

// CommandAck: command_id u32, status u8, ack_at binary64.
std::vector<uint8_t> encode_ack_payload(const CommandAck& ack);
std::optional<CommandAck> decode_ack_payload(std::span<const uint8_t> bytes);

struct FlightStatePayload {
  FlightMode mode = FlightMode::Stabilize;
  bool armed = false;
  Vec3 position{0.0, 0.0, 0.0};
  double yaw_deg = 0.0;
};

// FlightState: mode u8, armed u8, x,y,z,yaw binary64.
std::vector<uint8_t> encode_flight_state_payload(const FlightStatePayload& fs);
std::optional<FlightStatePayload> decode_flight_state_payload(
    std::span<const uint8_t> bytes);

enum class HealthLevel : uint8_t { Healthy, Degraded, Fault };

std::string_view format_health(HealthLevel h);
std::optional<HealthLevel> parse_health(std::string_view text);

// Health: aggregate level u8.
std::vector<uint8_t> encode_health_payload(HealthLevel level);
std::optional<HealthLevel> decode_health_payload(std::span<const uint8_t> bytes);

// Resource: cpu_pct, mem_mb, bandwidth_kbps binary64.
std::vector<uint8_t> encode_resource_payload(const ResourceSample& r);
std::optional<ResourceSample> decode_resource_payload(
    std::span<const uint8_t> bytes, uint64_t send_time_ns);

}  // namespace fsw::bridge
