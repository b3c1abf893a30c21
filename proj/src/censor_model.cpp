#include "accode/censor_model.hpp"

#include <algorithm>
#include <string>

#include "accode/errors.hpp"

namespace accode {

std::size_t CensorModel::position_of(std::uint64_t symbol) const {
  return static_cast<std::size_t>(
      std::lower_bound(keys_.begin(), keys_.end(), symbol) - keys_.begin());
}

std::uint64_t CensorModel::count(std::uint64_t symbol) const {
  const std::size_t pos = position_of(symbol);
  return pos < keys_.size() && keys_[pos] == symbol ? counts_[pos] : 0;
}

std::uint64_t CensorModel::count_before(std::size_t pos) const {
  std::uint64_t sum = 0;
  for (std::size_t i = pos; i > 0; i &= i - 1) sum += fenwick_[i - 1];
  return sum;
}

void CensorModel::fenwick_add(std::size_t pos, std::uint64_t delta) {
  for (std::size_t i = pos + 1; i <= fenwick_.size(); i += i & (~i + 1))
    fenwick_[i - 1] += delta;
}

void CensorModel::fenwick_rebuild() {
  fenwick_ = counts_;
  for (std::size_t i = 1; i <= fenwick_.size(); ++i) {
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= fenwick_.size()) fenwick_[parent - 1] += fenwick_[i - 1];
  }
}

CensorModel::Slot CensorModel::conditional(std::uint64_t censored) const {
  if (censored == kEscape) return {kEscape, total() - 1, 1};
  if (censored > max_)
    throw DomainError("censored symbol " + std::to_string(censored) +
                      " exceeds the running maximum " + std::to_string(max_));
  const std::size_t pos = position_of(censored);
  const std::uint64_t below = count_before(pos);
  const std::uint64_t n =
      pos < keys_.size() && keys_[pos] == censored ? counts_[pos] : 0;
  return {censored, (censored - 1) + 2 * below, 2 * n + 1};
}

CensorModel::Slot CensorModel::locate(std::uint64_t target) const {
  const std::uint64_t escape_cum = total() - 1;
  if (target == escape_cum) return {kEscape, escape_cum, 1};
  if (target > escape_cum)
    throw DomainError("target " + std::to_string(target) +
                      " outside [0, " + std::to_string(escape_cum + 1) + ")");

  // Largest seen symbol whose slot starts at or before target. The start of
  // the slot of keys_[k] is keys_[k] - 1 + 2 * count_before(k), increasing
  // in k.
  std::size_t lo = 0;
  std::size_t hi = keys_.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (keys_[mid] - 1 + 2 * count_before(mid) <= target)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo > 0) {
    const std::size_t k = lo - 1;
    const std::uint64_t cum = keys_[k] - 1 + 2 * count_before(k);
    const std::uint64_t freq = 2 * counts_[k] + 1;
    if (target < cum + freq) return {keys_[k], cum, freq};
    // An unseen symbol in the gap after keys_[k], each of width 1.
    const std::uint64_t symbol = keys_[k] + 1 + (target - (cum + freq));
    return {symbol, target, 1};
  }
  // Unseen symbols below the smallest seen one.
  return {target + 1, target, 1};
}

void CensorModel::update(std::uint64_t x) {
  if (x == 0) throw DomainError("symbols must be >= 1");
  const std::size_t pos = position_of(x);
  if (pos < keys_.size() && keys_[pos] == x) {
    ++counts_[pos];
    fenwick_add(pos, 1);
  } else {
    keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(pos), x);
    counts_.insert(counts_.begin() + static_cast<std::ptrdiff_t>(pos), 1);
    fenwick_rebuild();
  }
  ++steps_;
  max_ = std::max(max_, x);
}

}  // namespace accode
