#pragma once

// Closed-form bounds for exponentially decreasing envelope classes:
// metric-entropy brackets (nats), the minimax redundancy asymptote (bits),
// the expected running-maximum bound, power-law class bounds and the
// affinity bound.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "accode/sources.hpp"

namespace accode::bounds {

inline constexpr double kNatsToBits = 1.4426950408889634;  // log2(e)

// Smallest n >= 1 with sum_{k > n} f(k) <= eps^2 / 16.
std::uint64_t n_epsilon(const EnvelopeSpec& spec, double eps);

// Smallest l >= 0 with sum_{k > l} f(k) <= 1.
std::uint64_t l_f(const EnvelopeSpec& spec);

// -ln vol(unit ball of R^N) = ln Gamma(N/2 + 1) - (N/2) ln pi.
double log_ball_volume_neg(std::uint64_t N);

// sum_{k=1}^{N_eps} ln(sqrt f(k) + eps/4).
double b_epsilon(const EnvelopeSpec& spec, double eps);

// Upper bound on the metric entropy:
//   N ln(1/eps) + 3 N ln 2 + A(N) + B(eps),  N = N_eps.
double entropy_upper(const EnvelopeSpec& spec, double eps);

// floor((2/alpha) ln(1/eps)).
std::uint64_t default_lower_dimension(const EnvelopeSpec& spec, double eps);

// Lower bound on the metric entropy:
//   (1/2) sum_{k=l_f+1}^{l_f+m} ln f(k) + m ln(1/eps) + A(m).
// m defaults to default_lower_dimension(); DomainError if m < 1.
double entropy_lower(const EnvelopeSpec& spec, double eps,
                     std::optional<std::uint64_t> m = std::nullopt);

// (1/alpha) ln^2(1/eps), the common first-order term of both brackets.
double entropy_asymptote(const EnvelopeSpec& spec, double eps);

// log2(e) h(sqrt n): redundancy implied by a metric entropy h(1/eps).
double haussler_redundancy(const std::function<double(double)>& h, double n);

// log2^2(n) / (4 alpha log2 e) bits. Requires n >= 2.
double minimax_asymptote(double n, double alpha);

// (1/alpha)(ln n + ln(C / (1 - e^{-alpha})) + 1): bound on E[M_n].
double expected_max_bound(const EnvelopeSpec& spec, double n);

// Riemann zeta for alpha > 1: direct sum plus Euler-Maclaurin tail.
double zeta(double alpha);

// (1/alpha) int_1^inf (1 - e^{-1/(zeta(alpha) u)}) u^{1/alpha - 1} du.
double power_law_constant(double alpha);

struct PowerLawBounds {
  double lower_bits;
  double upper_bits;
};

// Redundancy bounds for the power-law envelope min(1, C / k^alpha):
//   lower = A(alpha) n^{1/alpha} log2 floor(C zeta(alpha)),
//   upper = (2 C n / (alpha - 1))^{1/alpha} (log2 n)^{1 - 1/alpha}.
// Requires alpha > 1, C > 1 and floor(C zeta(alpha)) >= 2.
PowerLawBounds power_law_bounds(double C, double alpha, double n);

// (sum_k f(k))^lambda, lambda > 0.
double affinity_bound(const EnvelopeSpec& spec, double lambda);

// A table of bound evaluations over a strictly monotone grid. `columns`
// names every entry of a row; `grid_column` is the index of the grid.
struct BoundCurve {
  std::string bound;
  std::vector<std::string> columns;
  std::size_t grid_column = 0;
  std::vector<std::vector<double>> rows;
  // Unit of the bound values and the factor converting them to bits.
  std::string unit;
  double to_bits = 1.0;
};

BoundCurve entropy_curve(const EnvelopeSpec& spec, std::span<const double> eps);
BoundCurve redundancy_curve(double alpha, std::span<const double> n);
BoundCurve power_law_curve(double C, double alpha, std::span<const double> n);
BoundCurve max_moment_curve(const EnvelopeSpec& spec, std::span<const double> n);

// Header plus one row per grid point, shortest round-trip decimals.
void write_csv(const BoundCurve& curve, std::ostream& out);

}  // namespace accode::bounds
