#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "accode/elias.hpp"
#include "accode/errors.hpp"
#include "support.hpp"

namespace accode {
namespace {

using testing::bit_string;
using testing::pack_bits;

std::string codeword(std::uint64_t x) {
  BitWriter w;
  elias::encode(x, w);
  return bit_string(w);
}

// Independent length formula on integer logs.
unsigned formula_length(std::uint64_t x) {
  const unsigned l = std::bit_width(x) - 1;
  return 1 + l + 2 * (std::bit_width(l + 1u) - 1);
}

TEST(Elias, WorkedExampleCodewords) {
  EXPECT_EQ(codeword(6), "01110");
  EXPECT_EQ(codeword(3), "0101");
  EXPECT_EQ(codeword(1), "1");
  EXPECT_EQ(codeword(2), "0100");
}

TEST(Elias, SmallCodewordTable) {
  EXPECT_EQ(codeword(4), "01100");
  EXPECT_EQ(codeword(7), "01111");
  EXPECT_EQ(codeword(8), "00100000");
  EXPECT_EQ(codeword(15), "00100111");
  EXPECT_EQ(codeword(16), "001010000");
}

TEST(Elias, LengthMatchesCodewordAndFormula) {
  for (std::uint64_t x = 1; x <= 5000; ++x) {
    EXPECT_EQ(elias::length(x), codeword(x).size()) << x;
    EXPECT_EQ(elias::length(x), formula_length(x)) << x;
  }
  for (unsigned b = 1; b < 63; ++b) {
    const std::uint64_t x = std::uint64_t{1} << b;
    EXPECT_EQ(elias::length(x), formula_length(x));
    EXPECT_EQ(elias::length(x - 1), formula_length(x - 1));
  }
  EXPECT_EQ(elias::length(elias::kMaxValue), 1u + 62 + 2 * 5);
}

TEST(Elias, RoundTripRandomValuesBackToBack) {
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> xs;
  BitWriter w;
  for (int i = 0; i < 2000; ++i) {
    const unsigned bits = 1 + rng() % 63;
    std::uint64_t x = rng() >> (64 - bits);
    if (x == 0) x = 1;
    xs.push_back(x);
    elias::encode(x, w);
  }
  xs.push_back(elias::kMaxValue);
  elias::encode(elias::kMaxValue, w);
  const auto bytes = std::move(w).take();
  BitReader r(bytes);
  for (const auto x : xs) EXPECT_EQ(elias::decode(r), x);
}

TEST(Elias, RejectsOutOfDomain) {
  BitWriter w;
  EXPECT_THROW(elias::encode(0, w), DomainError);
  EXPECT_THROW(elias::encode(elias::kMaxValue + 1, w), DomainError);
  EXPECT_THROW(elias::length(0), DomainError);
  EXPECT_EQ(w.bit_count(), 0u);
}

TEST(Elias, TruncatedCodewordRestoresPosition) {
  BitReader empty(std::span<const std::uint8_t>{});
  EXPECT_THROW(elias::decode(empty), EndOfStream);
  // Four zeros announce a 4-bit length field; only three bits follow.
  const auto bytes = pack_bits("00001000");
  BitReader r(bytes);
  EXPECT_THROW(elias::decode(r), EndOfStream);
  EXPECT_EQ(r.position(), 0u);
}

TEST(Elias, MalformedPrefixIsRejected) {
  const auto bytes = pack_bits("0000001111111111");
  BitReader r(bytes);
  EXPECT_THROW(elias::decode(r), MalformedStream);
  EXPECT_EQ(r.position(), 0u);
  // The longest legal codeword.
  const auto max = pack_bits("00000" "111111" + std::string(62, '1'));
  BitReader r2(max);
  EXPECT_EQ(elias::decode(r2), elias::kMaxValue);
  EXPECT_EQ(r2.position(), 73u);
}

}  // namespace
}  // namespace accode
