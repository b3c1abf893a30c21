#pragma once

#include <cstdint>

#include "accode/bitio.hpp"

namespace accode::elias {

// Largest value the codec accepts.
inline constexpr std::uint64_t kMaxValue = (std::uint64_t{1} << 63) - 1;

// Codeword length in bits:
//   1                                           if x == 1
//   1 + floor(log2 x) + 2 floor(log2(floor(log2 x) + 1))  otherwise.
// Throws DomainError for x == 0 or x > kMaxValue.
unsigned length(std::uint64_t x);

// Elias delta: gamma code of floor(log2 x) + 1, then the low floor(log2 x)
// bits of x. Appends exactly length(x) bits.
void encode(std::uint64_t x, BitWriter& out);

// Inverse of encode. Throws EndOfStream if the codeword is cut short and
// MalformedStream if it announces a value wider than 63 bits. On failure the
// reader position is left where it was.
std::uint64_t decode(BitReader& in);

}  // namespace accode::elias
