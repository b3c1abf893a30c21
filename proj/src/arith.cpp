#include "accode/arith.hpp"

#include <algorithm>
#include <string>

#include "accode/errors.hpp"

namespace accode::arith {
namespace {

__extension__ typedef unsigned __int128 u128;

void check_total_range(std::uint64_t total) {
  if (total == 0) throw DomainError("range coder: total must be positive");
  if (total > kMaxTotal)
    throw PrecisionOverflow("range coder: total " + std::to_string(total) +
                            " exceeds capacity 2^" +
                            std::to_string(kPrecision - 2));
}

void check_slot(std::uint64_t cum, std::uint64_t freq, std::uint64_t total) {
  check_total_range(total);
  if (freq == 0 || cum > total || freq > total - cum)
    throw DomainError("range coder: slot [" + std::to_string(cum) + ", " +
                      std::to_string(cum) + "+" + std::to_string(freq) +
                      ") does not fit in total " + std::to_string(total));
}

// Sub-interval of [low, high] for slot [cum, cum + freq) / total.
void narrow_interval(std::uint64_t& low, std::uint64_t& high,
                     std::uint64_t cum, std::uint64_t freq,
                     std::uint64_t total) {
  const std::uint64_t range = high - low + 1;
  const auto top = static_cast<std::uint64_t>(u128{range} * (cum + freq) / total);
  const auto bottom = static_cast<std::uint64_t>(u128{range} * cum / total);
  high = low + top - 1;
  low = low + bottom;
}

enum class Scaling { kNone, kLower, kUpper, kMiddle };

// Applies one renormalization step to [low, high] if one is due.
Scaling scale_once(std::uint64_t& low, std::uint64_t& high) {
  Scaling s;
  if (high < kHalf) {
    s = Scaling::kLower;
  } else if (low >= kHalf) {
    s = Scaling::kUpper;
    low -= kHalf;
    high -= kHalf;
  } else if (low >= kQuarter && high < kHalf + kQuarter) {
    s = Scaling::kMiddle;
    low -= kQuarter;
    high -= kQuarter;
  } else {
    return Scaling::kNone;
  }
  low <<= 1;
  high = (high << 1) | 1u;
  return s;
}

}  // namespace

FlushCode flush_code(std::uint64_t low, std::uint64_t high,
                     std::uint64_t pending) {
  if (pending == 0 && low == 0 && high == kWindowMax) return {0, 0};
  // Dyadic halves, then quarters. After renormalization one of the middle
  // quarters always fits.
  for (unsigned count = 1; count <= 2; ++count) {
    const std::uint64_t width = std::uint64_t{1} << (kPrecision - count);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << count); ++k) {
      const std::uint64_t start = k * width;
      if (low <= start && high >= start + width - 1) return {count, start};
    }
  }
  throw ContractViolation("range coder: flush on a non-normalized interval");
}

void RangeEncoder::emit(bool bit, BitWriter& out) {
  out.write_bit(bit);
  for (; pending_ > 0; --pending_) out.write_bit(!bit);
  // Deferred bits were counted when their scaling happened.
  ++emitted_;
}

void RangeEncoder::encode(std::uint64_t cum, std::uint64_t freq,
                          std::uint64_t total, BitWriter& out) {
  check_slot(cum, freq, total);
  narrow_interval(low_, high_, cum, freq, total);
  for (;;) {
    switch (scale_once(low_, high_)) {
      case Scaling::kLower: emit(false, out); break;
      case Scaling::kUpper: emit(true, out); break;
      case Scaling::kMiddle: ++pending_; ++emitted_; break;
      case Scaling::kNone: return;
    }
  }
}

void RangeEncoder::flush(BitWriter& out) {
  const FlushCode code = flush_code(low_, high_, pending_);
  for (unsigned i = 0; i < code.count; ++i) {
    const bool bit = (code.value >> (kPrecision - 1 - i)) & 1u;
    if (i == 0) {
      emit(bit, out);
    } else {
      out.write_bit(bit);
      ++emitted_;
    }
  }
  low_ = 0;
  high_ = kWindowMax;
  pending_ = 0;
}

void RangeDecoder::check_total(std::uint64_t total) {
  check_total_range(total);
}

void RangeDecoder::truncated() {
  throw EndOfStream("range decoder: stream ends before the symbol is determined");
}

RangeDecoder::Bounds RangeDecoder::value_bounds(
    std::span<const std::uint8_t> bytes) const {
  const std::uint64_t available = bytes.size() * 8;
  const std::uint64_t known64 =
      available > window_pos_ ? available - window_pos_ : 0;
  const auto known = static_cast<unsigned>(std::min<std::uint64_t>(known64, kPrecision));
  if (known == 0) return {low_, high_};

  std::uint64_t raw = 0;
  std::uint64_t pos = window_pos_;
  for (unsigned got = 0; got < known;) {
    const unsigned offset = pos & 7;
    const unsigned take = std::min(8 - offset, known - got);
    const unsigned byte = bytes[pos >> 3];
    raw = (raw << take) | ((byte >> (8 - offset - take)) & ((1u << take) - 1));
    got += take;
    pos += take;
  }
  const unsigned unknown = kPrecision - known;
  std::uint64_t lo = raw << unknown;
  std::uint64_t hi = lo | ((std::uint64_t{1} << unknown) - 1);
  if (flipped_) {
    lo ^= kHalf;
    hi ^= kHalf;
  }
  lo = std::max(lo, low_);
  hi = std::min(hi, high_);
  if (lo > hi) throw MalformedStream("range decoder: code point left the interval");
  return {lo, hi};
}

std::uint64_t RangeDecoder::target(std::uint64_t value,
                                   std::uint64_t total) const {
  const std::uint64_t range = high_ - low_ + 1;
  return static_cast<std::uint64_t>(
      (u128{value - low_ + 1} * total - 1) / range);
}

void RangeDecoder::narrow(std::uint64_t cum, std::uint64_t freq,
                          std::uint64_t total) {
  check_slot(cum, freq, total);
  narrow_interval(low_, high_, cum, freq, total);
  for (;;) {
    const Scaling s = scale_once(low_, high_);
    if (s == Scaling::kNone) return;
    ++window_pos_;
    if (s == Scaling::kMiddle) {
      ++pending_;
      flipped_ = true;
    } else {
      pending_ = 0;
      flipped_ = false;
    }
  }
}

void RangeDecoder::flush() {
  window_pos_ += flush_code(low_, high_, pending_).count;
  restart(window_pos_);
}

void RangeDecoder::restart(std::uint64_t start) {
  low_ = 0;
  high_ = kWindowMax;
  pending_ = 0;
  flipped_ = false;
  window_pos_ = start;
}

}  // namespace accode::arith
