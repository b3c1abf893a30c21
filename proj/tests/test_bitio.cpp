#include <gtest/gtest.h>

#include "accode/bitio.hpp"
#include "accode/errors.hpp"
#include "support.hpp"

namespace accode {
namespace {

using testing::bit_string;

TEST(BitWriter, MsbFirstWithinEachByte) {
  BitWriter w;
  w.write_bits(0b101, 3);
  w.write_bit(true);
  EXPECT_EQ(w.bit_count(), 4u);
  ASSERT_EQ(w.bytes().size(), 1u);
  EXPECT_EQ(w.bytes()[0], 0xB0);
  EXPECT_EQ(bit_string(w), "1011");
}

TEST(BitWriter, WideValuesAndZeroCount) {
  BitWriter w;
  w.write_bits(0xFFFFFFFFFFFFFFFFull, 0);
  EXPECT_EQ(w.bit_count(), 0u);
  w.write_bits(0x8000000000000001ull, 64);
  EXPECT_EQ(w.bit_count(), 64u);
  EXPECT_EQ(w.bytes().front(), 0x80);
  EXPECT_EQ(w.bytes().back(), 0x01);
}

TEST(BitWriter, OnlyLowBitsOfValueAreWritten) {
  BitWriter w;
  w.write_bits(0xFF, 2);
  EXPECT_EQ(bit_string(w), "11");
  w.write_bits(0b100, 2);
  EXPECT_EQ(bit_string(w), "1100");
}

TEST(BitWriter, TakeCompleteBytesKeepsPartialByte) {
  BitWriter w;
  w.write_bits(0xABC, 12);
  const auto full = w.take_complete_bytes();
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0], 0xAB);
  EXPECT_EQ(w.bit_count(), 4u);
  w.write_bits(0xD, 4);
  const auto rest = std::move(w).take();
  ASSERT_EQ(rest.size(), 1u);
  EXPECT_EQ(rest[0], 0xCD);
}

TEST(BitReader, RoundTripsMixedWidths) {
  BitWriter w;
  for (unsigned width = 1; width <= 64; ++width)
    w.write_bits(width == 64 ? ~0ull : (1ull << width) - 2, width);
  const auto bytes = std::move(w).take();
  BitReader r(bytes);
  for (unsigned width = 1; width <= 64; ++width)
    EXPECT_EQ(r.read_bits(width), width == 64 ? ~0ull : (1ull << width) - 2) << width;
}

TEST(BitReader, ThrowsAtEndWithoutConsuming) {
  const std::vector<std::uint8_t> bytes{0xF0};
  BitReader r(bytes);
  EXPECT_EQ(r.read_bits(6), 0b111100u);
  EXPECT_THROW(r.read_bits(3), EndOfStream);
  EXPECT_EQ(r.position(), 6u);
  EXPECT_EQ(r.remaining(), 2u);
  EXPECT_EQ(r.read_bits(2), 0u);
  EXPECT_THROW(r.read_bit(), EndOfStream);
}

TEST(BitReader, SeekWithinBoundsOnly) {
  const std::vector<std::uint8_t> bytes{0x0F, 0xF0};
  BitReader r(bytes, 4);
  EXPECT_EQ(r.read_bits(8), 0xFFu);
  r.seek(16);
  EXPECT_EQ(r.remaining(), 0u);
  EXPECT_THROW(r.seek(17), EndOfStream);
  r.seek(0);
  EXPECT_FALSE(r.read_bit());
}

TEST(BitReader, EmptyInput) {
  BitReader r(std::span<const std::uint8_t>{});
  EXPECT_EQ(r.size_bits(), 0u);
  EXPECT_THROW(r.read_bit(), EndOfStream);
  EXPECT_EQ(r.read_bits(0), 0u);
}

}  // namespace
}  // namespace accode
