#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "accode/bitio.hpp"

namespace accode::testing {

// First `bits` bits of `bytes` as a '0'/'1' string.
inline std::string bit_string(std::span<const std::uint8_t> bytes, std::uint64_t bits) {
  std::string s;
  for (std::uint64_t i = 0; i < bits; ++i) s += bit_at(bytes, i) ? '1' : '0';
  return s;
}

inline std::string bit_string(const BitWriter& w) {
  return bit_string(w.bytes(), w.bit_count());
}

// Packs a '0'/'1' string MSB-first, zero-padded.
inline std::vector<std::uint8_t> pack_bits(const std::string& s) {
  BitWriter w;
  for (const char c : s) w.write_bit(c == '1');
  return std::move(w).take();
}

}  // namespace accode::testing
