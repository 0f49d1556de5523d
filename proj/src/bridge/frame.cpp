#include "fsw/bridge/frame.hpp"

#include <cstring>

#include "fsw/bridge/crc32.hpp"

namespace fsw::bridge {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<uint8_t>& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u64(out, bits);
}

uint16_t get_u16(std::span<const uint8_t> in, size_t at) {
  return static_cast<uint16_t>(in[at] | (in[at + 1] << 8));
}

uint32_t get_u32(std::span<const uint8_t> in, size_t at) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | in[at + i];
  return v;
}

uint64_t get_u64(std::span<const uint8_t> in, size_t at) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in[at + i];
  return v;
}

double get_f64(std::span<const uint8_t> in, size_t at) {
  uint64_t bits = get_u64(in, at);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

namespace {

bool known_msg_type(uint8_t t) { return t >= 1 && t <= 6; }

}  // namespace

Result<std::vector<uint8_t>, EncodeError> encode_frame(
    MsgType msg_type, uint32_t seq, uint64_t send_time_ns,
    std::span<const uint8_t> payload) {
  if (payload.size() > kMaxPayload) return EncodeError::PayloadTooLarge;

  std::vector<uint8_t> out;
  out.reserve(kHeaderSize + payload.size() + kCrcSize);
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(msg_type));
  put_u32(out, seq);
  put_u64(out, send_time_ns);
  put_u16(out, static_cast<uint16_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  const uint32_t crc = crc32(std::span(out.data(), out.size()));
  put_u32(out, crc);
  return out;
}

Result<BridgeFrame, DecodeError> decode_frame(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderSize + kCrcSize) return DecodeError::TruncatedFrame;
  if (bytes[0] != kMagic0 || bytes[1] != kMagic1) return DecodeError::BadMagic;
  if (bytes[2] != kVersion) return DecodeError::BadVersion;

  const uint16_t payload_len = get_u16(bytes, 16);
  const size_t total = kHeaderSize + payload_len + kCrcSize;
  if (bytes.size() < total) return DecodeError::TruncatedFrame;

  const uint32_t stored_crc = get_u32(bytes, kHeaderSize + payload_len);
  const uint32_t computed = crc32(bytes.subspan(0, kHeaderSize + payload_len));
  if (stored_crc != computed) return DecodeError::CrcMismatch;
  if (!known_msg_type(bytes[3])) return DecodeError::UnknownMsgType;

  BridgeFrame frame;
  frame.header.msg_type = static_cast<MsgType>(bytes[3]);
  frame.header.seq = get_u32(bytes, 4);
  frame.header.send_time_ns = get_u64(bytes, 8);
  frame.header.payload_len = payload_len;
  frame.payload.assign(bytes.begin() + kHeaderSize,
                       bytes.begin() + kHeaderSize + payload_len);
  frame.crc = stored_crc;
  return frame;
}

}  // namespace fsw::bridge
