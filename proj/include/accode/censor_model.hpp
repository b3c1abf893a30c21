#pragma once

#include <cstdint>
#include <vector>

namespace accode {

// Censored symbol standing for "larger than the running maximum".
inline constexpr std::uint64_t kEscape = 0;

// Adaptive add-1/2 (Krichevsky-Trofimov) model over the symbols seen so far
// plus an escape, with the running maximum as alphabet cutoff.
//
// After i symbols with running maximum m and counts n_j, the coding
// probabilities of the next censored symbol are
//   P(j)      = (2 n_j + 1) / (2i + m + 1)   for 1 <= j <= m,
//   P(escape) =           1 / (2i + m + 1),
// laid out as slots for j = 1..m in increasing order with the escape last.
// A symbol above the maximum is coded as an escape but is still counted.
class CensorModel {
 public:
  // A slot of the current conditional distribution.
  struct Slot {
    std::uint64_t symbol;  // kEscape or 1..max_symbol()
    std::uint64_t cum;
    std::uint64_t freq;
  };

  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t max_symbol() const noexcept { return max_; }
  std::uint64_t total() const noexcept { return 2 * steps_ + max_ + 1; }

  // Occurrences of `symbol` among the symbols seen so far.
  std::uint64_t count(std::uint64_t symbol) const;

  // Number of distinct symbols seen so far.
  std::size_t distinct() const noexcept { return keys_.size(); }

  // x itself if x <= max_symbol(), otherwise kEscape.
  std::uint64_t censor(std::uint64_t x) const noexcept {
    return x <= max_ ? x : kEscape;
  }

  // Slot of a censored symbol. Throws DomainError unless the symbol is
  // kEscape or lies in [1, max_symbol()].
  Slot conditional(std::uint64_t censored) const;

  // Slot containing `target` in [0, total()). Throws DomainError otherwise.
  Slot locate(std::uint64_t target) const;

  // Counts x (escape or not) and raises the maximum. Throws DomainError for
  // x == 0.
  void update(std::uint64_t x);

 private:
  std::size_t position_of(std::uint64_t symbol) const;  // first key >= symbol
  std::uint64_t count_before(std::size_t pos) const;    // sum of counts_[0, pos)
  void fenwick_add(std::size_t pos, std::uint64_t delta);
  void fenwick_rebuild();

  std::uint64_t steps_ = 0;
  std::uint64_t max_ = 0;
  // Distinct symbols in increasing order, their counts, and a Fenwick tree
  // over the counts for prefix sums.
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> fenwick_;
};

}  // namespace accode
