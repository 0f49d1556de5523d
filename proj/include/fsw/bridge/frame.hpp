#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fsw/core/result.hpp"

namespace fsw::bridge {

enum class MsgType : uint8_t {
  PoseTelemetry = 1,
  Command = 2,
  CommandAck = 3,
  FlightState = 4,
  Health = 5,
  Resource = 6,
};

inline constexpr uint8_t kMagic0 = 0x46;
inline constexpr uint8_t kMagic1 = 0x42;
inline constexpr uint8_t kVersion = 1;
inline constexpr size_t kHeaderSize = 18;  // magic(2) ver(1) type(1) seq(4) time(8) len(2)
inline constexpr size_t kCrcSize = 4;
inline constexpr size_t kMaxPayload = 65535;

struct FrameHeader {
  MsgType msg_type = MsgType::PoseTelemetry;
  uint32_t seq = 0;               // per-msg_type, monotone from 0
  uint64_t send_time_ns = 0;
  uint16_t payload_len = 0;
};

struct BridgeFrame {
  FrameHeader header;
  std::vector<uint8_t> payload;
  uint32_t crc = 0;  // over header bytes ++ payload bytes
};

enum class EncodeError : uint8_t { PayloadTooLarge };

enum class DecodeError : uint8_t {
  BadMagic,
  BadVersion,
  TruncatedFrame,
  CrcMismatch,
  UnknownMsgType,
};

// Layout: header (18 bytes) ++ payload ++ crc32 (4 bytes), all
// multi-byte integers little-endian.
Result<std::vector<uint8_t>, EncodeError> encode_frame(
    MsgType msg_type, uint32_t seq, uint64_t send_time_ns,
    std::span<const uint8_t> payload);

Result<BridgeFrame, DecodeError> decode_frame(std::span<const uint8_t> bytes);

// Little-endian scalar append/read helpers shared by the payload codecs.
void put_u16(std::vector<uint8_t>& out, uint16_t v);
void put_u32(std::vector<uint8_t>& out, uint32_t v);
void put_u64(std::vector<uint8_t>& out, uint64_t v);
void put_f64(std::vector<uint8_t>& out, double v);
uint16_t get_u16(std::span<const uint8_t> in, size_t at);
uint32_t get_u32(std::span<const uint8_t> in, size_t at);
uint64_t get_u64(std::span<const uint8_t> in, size_t at);
double get_f64(std::span<const uint8_t> in, size_t at);

}  // namespace fsw::bridge
