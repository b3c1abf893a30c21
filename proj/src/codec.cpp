#include "accode/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "accode/elias.hpp"
#include "accode/errors.hpp"

namespace accode {
namespace {

// Model total after one more symbol, which must stay within coder capacity.
bool fits_capacity(const CensorModel& model, std::uint64_t x) {
  const std::uint64_t m = std::max(model.max_symbol(), x);
  const std::uint64_t steps = model.steps() + 1;
  if (m > arith::kMaxTotal || steps > arith::kMaxTotal) return false;
  return 2 * steps + m + 1 <= arith::kMaxTotal;
}

}  // namespace

void StreamEncoder::code(const CensorModel::Slot& slot) {
  const std::uint64_t total = model_.total();
  coder_.encode(slot.cum, slot.freq, total, out_);
  trace_.ideal_c1_bits += std::log2(static_cast<long double>(total)) -
                          std::log2(static_cast<long double>(slot.freq));
  if (record_) trace_.censored.push_back(slot.symbol);
}

std::vector<std::uint8_t> StreamEncoder::push(std::uint64_t x) {
  if (finished_) throw ContractViolation("push after finish");
  if (x == 0) throw DomainError("symbols must be >= 1");
  if (!fits_capacity(model_, x))
    throw PrecisionOverflow("symbol " + std::to_string(x) +
                            " exceeds the range coder capacity");

  const std::uint64_t censored = model_.censor(x);
  code(model_.conditional(censored));
  if (censored == kEscape) {
    coder_.flush(out_);
    const std::uint64_t increment = x - model_.max_symbol() + 1;
    elias::encode(increment, out_);
    trace_.c2_bits += elias::length(increment);
    ++trace_.escapes;
    if (record_) trace_.maxima_increments.push_back(increment);
  }
  model_.update(x);
  ++trace_.symbols;
  trace_.c1_bits = coder_.bits_emitted();
  return out_.take_complete_bytes();
}

std::vector<std::uint8_t> StreamEncoder::finish() {
  if (finished_) throw ContractViolation("finish called twice");
  code(model_.conditional(kEscape));
  coder_.finalize(out_);
  elias::encode(1, out_);
  trace_.c2_bits += elias::length(1);
  if (record_) trace_.maxima_increments.push_back(1);
  trace_.c1_bits = coder_.bits_emitted();
  finished_ = true;
  return std::move(out_).take();
}

Encoded encode_with_trace(std::span<const std::uint64_t> xs) {
  StreamEncoder encoder(/*record_trace=*/true);
  Encoded result;
  for (const std::uint64_t x : xs) {
    auto chunk = encoder.push(x);
    result.bytes.insert(result.bytes.end(), chunk.begin(), chunk.end());
  }
  auto tail = encoder.finish();
  result.bytes.insert(result.bytes.end(), tail.begin(), tail.end());
  result.bit_count = encoder.bit_count();
  result.trace = encoder.trace();
  return result;
}

std::vector<std::uint8_t> encode_message(std::span<const std::uint64_t> xs) {
  StreamEncoder encoder;
  std::vector<std::uint8_t> bytes;
  for (const std::uint64_t x : xs) {
    auto chunk = encoder.push(x);
    bytes.insert(bytes.end(), chunk.begin(), chunk.end());
  }
  auto tail = encoder.finish();
  bytes.insert(bytes.end(), tail.begin(), tail.end());
  return bytes;
}

void StreamDecoder::accept(std::uint64_t x, std::vector<std::uint64_t>& out) {
  model_.update(x);
  out.push_back(x);
  if (observer_) observer_(x, model_);
}

// One unit of progress; false when blocked on input or finished.
bool StreamDecoder::step(std::vector<std::uint64_t>& out) {
  switch (phase_) {
    case Phase::kDone:
      return false;

    case Phase::kSymbol: {
      const arith::BitInput input{buffer_, complete_};
      const auto slot = coder_.decode(
          input, model_.total(),
          [this](std::uint64_t target) { return model_.locate(target); });
      if (!slot) return false;
      if (slot->symbol == kEscape) {
        coder_.flush();
        phase_ = Phase::kIncrement;
      } else {
        accept(slot->symbol, out);
      }
      return true;
    }

    case Phase::kIncrement: {
      const std::uint64_t start = coder_.position();
      if (start > buffer_.size() * 8) {
        if (complete_) throw EndOfStream("stream ends inside an arithmetic segment");
        return false;
      }
      BitReader reader(buffer_, start);
      std::uint64_t increment;
      try {
        increment = elias::decode(reader);
      } catch (const EndOfStream&) {
        if (complete_) throw;
        return false;
      }
      if (increment == 1) {
        phase_ = Phase::kDone;
        consumed_ = reader.position();
        return false;
      }
      const std::uint64_t m = model_.max_symbol();
      if (increment - 1 > elias::kMaxValue - m)
        throw MalformedStream("new maximum overflows");
      const std::uint64_t x = m + increment - 1;
      if (!fits_capacity(model_, x))
        throw MalformedStream("new maximum exceeds the range coder capacity");
      accept(x, out);
      coder_.restart(reader.position());
      phase_ = Phase::kSymbol;
      return true;
    }
  }
  return false;
}

std::vector<std::uint64_t> StreamDecoder::run() {
  std::vector<std::uint64_t> out;
  try {
    while (step(out)) {
    }
  } catch (const MalformedStream&) {
    throw;
  } catch (const EndOfStream& e) {
    throw MalformedStream(std::string("truncated stream: ") + e.what());
  } catch (const Error& e) {
    throw MalformedStream(std::string("invalid stream: ") + e.what());
  }
  return out;
}

std::vector<std::uint64_t> StreamDecoder::push(
    std::span<const std::uint8_t> bytes) {
  if (done()) return {};
  if (complete_) throw ContractViolation("push after finish");
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
  return run();
}

std::vector<std::uint64_t> StreamDecoder::finish() {
  complete_ = true;
  auto out = run();
  if (!done()) throw MalformedStream("truncated stream");
  return out;
}

Decoded decode_with_info(std::span<const std::uint8_t> bytes) {
  StreamDecoder decoder;
  Decoded result;
  result.symbols = decoder.push(bytes);
  auto rest = decoder.finish();
  result.symbols.insert(result.symbols.end(), rest.begin(), rest.end());
  result.bits_consumed = decoder.bits_consumed();
  return result;
}

std::vector<std::uint64_t> decode_message(std::span<const std::uint8_t> bytes) {
  return decode_with_info(bytes).symbols;
}

}  // namespace accode
