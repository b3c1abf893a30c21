#include "accode/elias.hpp"

#include <bit>
#include <string>

#include "accode/errors.hpp"

namespace accode::elias {
namespace {

unsigned floor_log2(std::uint64_t x) { return std::bit_width(x) - 1; }

void check_domain(std::uint64_t x) {
  if (x == 0 || x > kMaxValue)
    throw DomainError("Elias code is defined on [1, 2^63-1], got " +
                      std::to_string(x));
}

}  // namespace

unsigned length(std::uint64_t x) {
  check_domain(x);
  if (x == 1) return 1;
  const unsigned l = floor_log2(x);
  return 1 + l + 2 * floor_log2(l + 1);
}

void encode(std::uint64_t x, BitWriter& out) {
  check_domain(x);
  const unsigned width = floor_log2(x);       // low bits of x sent verbatim
  const unsigned n = width + 1;               // gamma-coded bit length of x
  const unsigned prefix = floor_log2(n);      // zeros before n
  out.write_bits(0, prefix);
  out.write_bits(n, prefix + 1);
  out.write_bits(x, width);
}

std::uint64_t decode(BitReader& in) {
  const std::uint64_t start = in.position();
  try {
    unsigned zeros = 0;
    while (!in.read_bit()) {
      // n <= 63 needs at most 5 leading zeros.
      if (++zeros > 5) throw MalformedStream("Elias codeword too long");
    }
    const std::uint64_t n =
        (std::uint64_t{1} << zeros) | in.read_bits(zeros);
    if (n > 63) throw MalformedStream("Elias codeword exceeds 63 bits");
    const auto width = static_cast<unsigned>(n - 1);
    return (std::uint64_t{1} << width) | in.read_bits(width);
  } catch (...) {
    in.seek(start);
    throw;
  }
}

}  // namespace accode::elias
