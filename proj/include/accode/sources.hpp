#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace accode {

// Exponentially decreasing envelope f(k) = min(1, C e^{-alpha k}), k >= 1.
// Admissible when alpha > 0 and C > e^{2 alpha}, which makes f(1) = f(2) = 1
// and the total mass of f at least 2.
class EnvelopeSpec {
 public:
  // Throws DomainError for a non-admissible pair.
  EnvelopeSpec(double C, double alpha);

  double C() const noexcept { return c_; }
  double alpha() const noexcept { return alpha_; }

  // C e^{-alpha k}, without the clamp.
  double raw(double k) const;
  double f(std::uint64_t k) const;

  // Number of leading k with f(k) = 1.
  std::uint64_t saturated() const noexcept { return saturated_; }

  // Sum of f(k) over k >= n + 1, in closed form.
  double tail(std::uint64_t n) const;
  double mass() const { return tail(0); }

 private:
  double c_;
  double alpha_;
  std::uint64_t saturated_;
};

// Deterministic generator used by every sampler.
using Rng = std::mt19937_64;

// Seed of trial `trial` of an experiment seeded with `base`.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial);

// Uniform draw in (0, 1] with 53 random bits.
double uniform_open_closed(Rng& rng);

struct Geometric {
  double q;  // P(k) = (1 - q) q^{k-1}, 0 <= q < 1
};
struct PointMass {
  std::uint64_t k;
};
struct ExplicitPmf {
  std::vector<double> probs;  // probs[k - 1] = P(k)
  std::string origin;         // file the pmf came from, if any
};

// An iid source on the positive integers.
class SourceDist {
 public:
  using Kind = std::variant<Geometric, PointMass, ExplicitPmf>;

  static SourceDist geometric(double q);
  static SourceDist point(std::uint64_t k);
  // Throws DomainError unless entries are non-negative and sum to 1 within
  // 1e-12.
  static SourceDist explicit_pmf(std::vector<double> probs,
                                 std::string origin = {});

  // "geom:q=0.25", "geom:rate=1" (q = e^{-rate}), "point:k=3" or
  // "explicit:path.csv" (one probability per line, first line is P(1)).
  // Throws DomainError on a bad spec and IoError if the file is unreadable.
  static SourceDist parse(std::string_view spec);

  const Kind& kind() const noexcept { return kind_; }

  double pmf(std::uint64_t k) const;
  // P(X > k).
  double tail(std::uint64_t k) const;
  double mean() const;
  double entropy_bits() const;

  // Inverse-CDF sampling.
  std::uint64_t sample(Rng& rng) const;
  std::vector<std::uint64_t> sample_iid(std::size_t n, Rng& rng) const;

  // Canonical spec string; round-trips through parse() for the parametric
  // kinds.
  std::string describe() const;

 private:
  explicit SourceDist(Kind kind);

  Kind kind_;
  std::vector<double> cdf_;  // explicit kind only
};

// True iff P(k) <= C e^{-alpha k} for every k. Comparisons allow a relative
// slack of 1e-12 so that sources built from rounded constants on the class
// boundary (e.g. q = exp(-alpha)) are accepted.
bool is_member(const SourceDist& dist, const EnvelopeSpec& spec);

// sqrt(sum_k (sqrt P(k) - sqrt Q(k))^2). Closed form for two geometric
// sources, otherwise summed until both tails drop below 1e-16.
double hellinger(const SourceDist& p, const SourceDist& q);

}  // namespace accode
