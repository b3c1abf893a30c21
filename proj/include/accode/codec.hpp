#pragma once

// AutoCensuring codec for sequences of positive integers.
//
// Stream layout, bit-exact and headerless:
//   for each symbol x (running maximum m before x):
//     arithmetic bits of the censored symbol (x, or escape if x > m);
//     if escaped: flush of the arithmetic coder, then Elias(x - m + 1);
//   terminator: arithmetic bits of one more escape, final flush, Elias(1);
//   zero padding to the next byte boundary.
// The first symbol is always an escape of probability 1 whose flush is
// empty, so every stream starts with Elias(x_1 + 1). The terminator is the
// only escape followed by Elias(1), which makes the code prefix-free over
// messages of any length.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "accode/arith.hpp"
#include "accode/bitio.hpp"
#include "accode/censor_model.hpp"

namespace accode {

// What the encoder did, for accounting and experiments.
struct EncodeTrace {
  // Filled only when recording is requested.
  std::vector<std::uint64_t> censored;           // ends with the terminator escape
  std::vector<std::uint64_t> maxima_increments;  // ends with the final 1

  std::uint64_t c1_bits = 0;  // arithmetic-coded bits
  std::uint64_t c2_bits = 0;  // Elias-coded bits
  std::uint64_t escapes = 0;  // not counting the terminator
  std::uint64_t symbols = 0;
  // -log2 of the product of the coded probabilities (terminator included).
  long double ideal_c1_bits = 0;

  std::uint64_t total_bits() const noexcept { return c1_bits + c2_bits; }
};

// Online encoder. Each push returns the bytes it completed; the
// concatenation of all returned bytes equals encode_message of the same
// symbols.
class StreamEncoder {
 public:
  explicit StreamEncoder(bool record_trace = false) : record_(record_trace) {}

  // Throws DomainError for x == 0, PrecisionOverflow when the model total
  // would exceed the coder capacity, ContractViolation after finish().
  // Nothing is emitted when it throws.
  std::vector<std::uint8_t> push(std::uint64_t x);

  // Codes the terminator and returns the remaining (zero-padded) bytes.
  // Throws ContractViolation when called twice.
  std::vector<std::uint8_t> finish();

  bool finished() const noexcept { return finished_; }
  const EncodeTrace& trace() const noexcept { return trace_; }
  const CensorModel& model() const noexcept { return model_; }

  // Codeword bits emitted so far (before padding).
  std::uint64_t bit_count() const noexcept { return trace_.total_bits(); }

 private:
  void code(const CensorModel::Slot& slot);

  bool record_;
  bool finished_ = false;
  CensorModel model_;
  arith::RangeEncoder coder_;
  BitWriter out_;
  EncodeTrace trace_;
};

struct Encoded {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_count = 0;  // codeword length before padding
  EncodeTrace trace;
};

std::vector<std::uint8_t> encode_message(std::span<const std::uint64_t> xs);

// Same bytes as encode_message, plus the recorded trace.
Encoded encode_with_trace(std::span<const std::uint64_t> xs);

// Online decoder. Symbols are returned as soon as the bytes received
// determine them.
class StreamDecoder {
 public:
  // Called after each decoded symbol with the model already updated.
  using Observer = std::function<void(std::uint64_t, const CensorModel&)>;

  void set_observer(Observer observer) { observer_ = std::move(observer); }

  // Appends input and returns the newly decoded symbols. Bytes pushed after
  // the terminator are ignored. Throws MalformedStream on invalid input.
  std::vector<std::uint64_t> push(std::span<const std::uint8_t> bytes);

  // Declares the input complete. Returns any symbols still pending and
  // throws MalformedStream if the codeword is truncated.
  std::vector<std::uint64_t> finish();

  bool done() const noexcept { return phase_ == Phase::kDone; }

  // Length of the codeword in bits; meaningful once done().
  std::uint64_t bits_consumed() const noexcept { return consumed_; }

  const CensorModel& model() const noexcept { return model_; }

 private:
  enum class Phase { kSymbol, kIncrement, kDone };

  std::vector<std::uint64_t> run();
  bool step(std::vector<std::uint64_t>& out);
  void accept(std::uint64_t x, std::vector<std::uint64_t>& out);

  std::vector<std::uint8_t> buffer_;
  bool complete_ = false;
  Phase phase_ = Phase::kSymbol;
  CensorModel model_;
  arith::RangeDecoder coder_;
  std::uint64_t consumed_ = 0;
  Observer observer_;
};

struct Decoded {
  std::vector<std::uint64_t> symbols;
  std::uint64_t bits_consumed = 0;
};

// Throws MalformedStream if `bytes` does not start with a valid codeword.
// Bytes after the codeword are ignored.
std::vector<std::uint64_t> decode_message(std::span<const std::uint8_t> bytes);
Decoded decode_with_info(std::span<const std::uint8_t> bytes);

}  // namespace accode
