#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace fsw::bridge {

// CRC-32/ISO-HDLC (the zlib CRC): reflected poly 0xEDB88320,
// init 0xFFFFFFFF, final xor 0xFFFFFFFF. Check("123456789") = 0xCBF43926.
uint32_t crc32(std::span<const uint8_t> data, uint32_t seed = 0);

}  // namespace fsw::bridge
