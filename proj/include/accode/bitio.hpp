#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace accode {

// Appends bits MSB-first into a byte buffer. Unused low bits of the last
// byte are always zero, so the buffer is the zero-padded output at any time.
class BitWriter {
 public:
  void write_bit(bool bit);

  // Writes the low `count` bits of `value`, most significant first.
  void write_bits(std::uint64_t value, unsigned count);

  // Bits currently held in the buffer.
  std::uint64_t bit_count() const noexcept { return bit_count_; }

  const std::vector<std::uint8_t>& bytes() const noexcept { return buffer_; }

  // Moves the buffer out; the writer is left empty.
  std::vector<std::uint8_t> take() &&;

  // Removes and returns the bytes whose eight bits are all written. The
  // partially filled tail byte, if any, stays in the writer.
  std::vector<std::uint8_t> take_complete_bytes();

 private:
  std::vector<std::uint8_t> buffer_;
  std::uint64_t bit_count_ = 0;
};

// Reads bits MSB-first from a borrowed byte buffer.
class BitReader {
 public:
  BitReader() = default;
  explicit BitReader(std::span<const std::uint8_t> source,
                     std::uint64_t position = 0);

  // Throws EndOfStream when no bits remain.
  bool read_bit();

  // Reads `count` (<= 64) bits as an unsigned integer, MSB first. Throws
  // EndOfStream without consuming anything if fewer than `count` remain.
  std::uint64_t read_bits(unsigned count);

  std::uint64_t position() const noexcept { return position_; }
  std::uint64_t size_bits() const noexcept { return source_.size() * 8; }
  std::uint64_t remaining() const noexcept { return size_bits() - position_; }

  // Throws EndOfStream if `position` lies beyond the end of the source.
  void seek(std::uint64_t position);

 private:
  std::span<const std::uint8_t> source_;
  std::uint64_t position_ = 0;
};

// Bit `index` (MSB-first numbering) of `bytes`; the caller checks bounds.
inline bool bit_at(std::span<const std::uint8_t> bytes, std::uint64_t index) {
  return (bytes[index >> 3] >> (7 - (index & 7))) & 1u;
}

}  // namespace accode
