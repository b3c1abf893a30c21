#include "accode/bitio.hpp"

#include <utility>

#include "accode/errors.hpp"

namespace accode {

void BitWriter::write_bit(bool bit) {
  const unsigned offset = bit_count_ & 7;
  if (offset == 0) buffer_.push_back(0);
  if (bit) buffer_.back() |= static_cast<std::uint8_t>(0x80u >> offset);
  ++bit_count_;
}

void BitWriter::write_bits(std::uint64_t value, unsigned count) {
  for (unsigned i = count; i-- > 0;) write_bit((value >> i) & 1u);
}

std::vector<std::uint8_t> BitWriter::take() && {
  bit_count_ = 0;
  return std::exchange(buffer_, {});
}

std::vector<std::uint8_t> BitWriter::take_complete_bytes() {
  const std::size_t complete = bit_count_ / 8;
  std::vector<std::uint8_t> out(buffer_.begin(), buffer_.begin() + complete);
  buffer_.erase(buffer_.begin(), buffer_.begin() + complete);
  bit_count_ -= 8 * static_cast<std::uint64_t>(complete);
  return out;
}

BitReader::BitReader(std::span<const std::uint8_t> source,
                     std::uint64_t position)
    : source_(source) {
  seek(position);
}

bool BitReader::read_bit() {
  if (position_ >= size_bits()) throw EndOfStream("bit reader exhausted");
  return bit_at(source_, position_++);
}

std::uint64_t BitReader::read_bits(unsigned count) {
  if (count > 64) throw DomainError("read_bits: at most 64 bits per call");
  if (remaining() < count) throw EndOfStream("bit reader exhausted");
  std::uint64_t value = 0;
  for (unsigned i = 0; i < count; ++i)
    value = (value << 1) | (bit_at(source_, position_++) ? 1u : 0u);
  return value;
}

void BitReader::seek(std::uint64_t position) {
  if (position > size_bits()) throw EndOfStream("seek beyond end of source");
  position_ = position;
}

}  // namespace accode
