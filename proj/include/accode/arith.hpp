#pragma once

// Integer arithmetic coder over exact rational slot probabilities.
//
// The interval [low, high] lives in a 62-bit window. Renormalization uses
// the classical three scalings: E1 (interval in the lower half, emit 0),
// E2 (upper half, emit 1) and E3 (middle half, defer one bit as "pending").
// Every scaling moves the window one bit further into the output, so the
// number of bits emitted for a segment is exactly (#scalings + flush bits).
//
// A flush ends a segment: it emits the shortest string whose dyadic interval
// lies inside [low, high] (0, 1 or 2 bits plus the pending ones) and resets
// the interval. The decoder recomputes that length from its mirrored state,
// so it knows where the segment ends without any marker. This is what lets
// other codewords be spliced between segments.
//
// The decoder never reads ahead. It brackets the code point between the
// values obtained by completing the known bits with all zeros and all ones,
// and reports a symbol only once both ends fall in the same slot.

#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>

#include "accode/bitio.hpp"

namespace accode::arith {

inline constexpr unsigned kPrecision = 62;
inline constexpr std::uint64_t kWindowMax = (std::uint64_t{1} << kPrecision) - 1;
inline constexpr std::uint64_t kHalf = std::uint64_t{1} << (kPrecision - 1);
inline constexpr std::uint64_t kQuarter = std::uint64_t{1} << (kPrecision - 2);

// Largest frequency total the coder accepts. After renormalization the
// interval spans more than kQuarter values, so every slot of a total up to
// kQuarter keeps a non-empty integer sub-interval.
inline constexpr std::uint64_t kMaxTotal = kQuarter;

// A slot [cum, cum + freq) out of `total`.
struct Slot {
  std::uint64_t cum;
  std::uint64_t freq;
};

// Bits emitted by a flush: the top `count` bits of `value` (a window value),
// with the pending bits inserted after the first one.
struct FlushCode {
  unsigned count;
  std::uint64_t value;
};

FlushCode flush_code(std::uint64_t low, std::uint64_t high,
                     std::uint64_t pending);

class RangeEncoder {
 public:
  // Narrows the interval to [cum, cum + freq) / total and emits the bits
  // that become settled. Throws DomainError for an empty or out-of-range
  // slot and PrecisionOverflow if total > kMaxTotal.
  void encode(std::uint64_t cum, std::uint64_t freq, std::uint64_t total,
              BitWriter& out);

  // Makes everything encoded so far decodable from the bits emitted so far,
  // then restarts from the full interval. A flush of a fresh state emits
  // nothing.
  void flush(BitWriter& out);

  // Final flush of the stream.
  void finalize(BitWriter& out) { flush(out); }

  // Total bits written since construction.
  std::uint64_t bits_emitted() const noexcept { return emitted_; }

  std::uint64_t low() const noexcept { return low_; }
  std::uint64_t high() const noexcept { return high_; }
  std::uint64_t pending() const noexcept { return pending_; }

 private:
  void emit(bool bit, BitWriter& out);

  std::uint64_t low_ = 0;
  std::uint64_t high_ = kWindowMax;
  std::uint64_t pending_ = 0;
  std::uint64_t emitted_ = 0;
};

// The part of the stream the decoder may look at.
struct BitInput {
  std::span<const std::uint8_t> bytes;
  // True when no further bytes will ever arrive.
  bool complete = true;
};

class RangeDecoder {
 public:
  // `start` is the stream offset (in bits) of the segment's first bit.
  explicit RangeDecoder(std::uint64_t start = 0) : window_pos_(start) {}

  // Decodes the next slot. `locate(target)` must return the slot (any type
  // with `cum` and `freq` members) whose [cum, cum + freq) contains target.
  // Returns nullopt when the available bits do not determine the slot yet
  // and more input may come; throws EndOfStream if the input is complete.
  template <typename Locate>
  auto decode(BitInput in, std::uint64_t total, Locate&& locate)
      -> std::optional<std::invoke_result_t<Locate&, std::uint64_t>>;

  // Mirror of RangeEncoder::flush: skips the flush bits and restarts.
  void flush();

  // Stream offset of the window start. After flush() this is the first bit
  // following the segment.
  std::uint64_t position() const noexcept { return window_pos_; }

  // Starts a new segment at `start`.
  void restart(std::uint64_t start);

  std::uint64_t low() const noexcept { return low_; }
  std::uint64_t high() const noexcept { return high_; }

 private:
  struct Bounds {
    std::uint64_t lo;
    std::uint64_t hi;
  };

  static void check_total(std::uint64_t total);
  Bounds value_bounds(std::span<const std::uint8_t> bytes) const;
  std::uint64_t target(std::uint64_t value, std::uint64_t total) const;
  [[noreturn]] static void truncated();
  void narrow(std::uint64_t cum, std::uint64_t freq, std::uint64_t total);

  std::uint64_t low_ = 0;
  std::uint64_t high_ = kWindowMax;
  std::uint64_t pending_ = 0;
  std::uint64_t window_pos_ = 0;
  // The window value equals the raw stream window with its top bit flipped
  // iff the most recent scaling was an E3.
  bool flipped_ = false;
};

template <typename Locate>
auto RangeDecoder::decode(BitInput in, std::uint64_t total, Locate&& locate)
    -> std::optional<std::invoke_result_t<Locate&, std::uint64_t>> {
  check_total(total);
  const Bounds b = value_bounds(in.bytes);
  auto slot = locate(target(b.lo, total));
  if (target(b.hi, total) >= slot.cum + slot.freq) {
    if (in.complete) truncated();
    return std::nullopt;
  }
  narrow(slot.cum, slot.freq, total);
  return slot;
}

}  // namespace accode::arith
