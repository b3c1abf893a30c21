#include "accode/bounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <ostream>

#include "accode/errors.hpp"
#include "accode/format.hpp"

namespace accode::bounds {
namespace {

void check_eps(double eps) {
  if (!(eps > 0) || !std::isfinite(eps))
    throw DomainError("epsilon must be positive and finite, got " +
                      format_double(eps));
}

// ln f(k) without underflow for large k.
double log_f(const EnvelopeSpec& spec, std::uint64_t k) {
  return k <= spec.saturated()
             ? 0.0
             : std::log(spec.C()) - spec.alpha() * static_cast<double>(k);
}

// Smallest n >= floor with tail(n) <= threshold, starting from a guess.
std::uint64_t first_tail_below(const EnvelopeSpec& spec, double threshold,
                               std::uint64_t floor_n, double guess) {
  std::uint64_t n = floor_n;
  if (std::isfinite(guess) && guess > static_cast<double>(floor_n))
    n = static_cast<std::uint64_t>(std::ceil(guess));
  while (n > floor_n && spec.tail(n - 1) <= threshold) --n;
  while (spec.tail(n) > threshold) ++n;
  return n;
}

// Solves C e^{-alpha (n+1)} / (1 - e^{-alpha}) = threshold for n.
double geometric_tail_guess(const EnvelopeSpec& spec, double threshold) {
  return std::log(spec.C() / (-std::expm1(-spec.alpha()) * threshold)) /
             spec.alpha() -
         1;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("bound curve: empty grid");
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    increasing = increasing && grid[i] > grid[i - 1];
    decreasing = decreasing && grid[i] < grid[i - 1];
  }
  if (!increasing && !decreasing)
    throw DomainError("bound curve: grid must be strictly monotone");
}

void check_row(const std::vector<double>& row) {
  for (const double v : row)
    if (!std::isfinite(v)) throw DomainError("bound curve: non-finite value");
}

}  // namespace

std::uint64_t n_epsilon(const EnvelopeSpec& spec, double eps) {
  check_eps(eps);
  const double threshold = eps * eps / 16;
  return first_tail_below(spec, threshold, 1,
                          geometric_tail_guess(spec, threshold));
}

std::uint64_t l_f(const EnvelopeSpec& spec) {
  return first_tail_below(spec, 1.0, 0, geometric_tail_guess(spec, 1.0));
}

double log_ball_volume_neg(std::uint64_t N) {
  if (N == 0) throw DomainError("ball dimension must be >= 1");
  const double half = static_cast<double>(N) / 2;
  return std::lgamma(half + 1) - half * std::log(std::numbers::pi);
}

double b_epsilon(const EnvelopeSpec& spec, double eps) {
  const std::uint64_t n = n_epsilon(spec, eps);
  double sum = 0;
  for (std::uint64_t k = 1; k <= n; ++k)
    sum += std::log(std::exp(0.5 * log_f(spec, k)) + eps / 4);
  return sum;
}

double entropy_upper(const EnvelopeSpec& spec, double eps) {
  const std::uint64_t n = n_epsilon(spec, eps);
  const auto nd = static_cast<double>(n);
  return nd * std::log(1 / eps) + 3 * nd * std::numbers::ln2 +
         log_ball_volume_neg(n) + b_epsilon(spec, eps);
}

std::uint64_t default_lower_dimension(const EnvelopeSpec& spec, double eps) {
  check_eps(eps);
  const double m = std::floor(2 / spec.alpha() * std::log(1 / eps));
  return m >= 1 ? static_cast<std::uint64_t>(m) : 0;
}

double entropy_lower(const EnvelopeSpec& spec, double eps,
                     std::optional<std::uint64_t> m) {
  check_eps(eps);
  const std::uint64_t dim = m.value_or(default_lower_dimension(spec, eps));
  if (dim < 1)
    throw DomainError("lower entropy bound needs m >= 1; epsilon " +
                      format_double(eps) + " is too large");
  const std::uint64_t skip = l_f(spec);
  double log_sum = 0;
  for (std::uint64_t k = skip + 1; k <= skip + dim; ++k) log_sum += log_f(spec, k);
  const auto md = static_cast<double>(dim);
  return 0.5 * log_sum + md * std::log(1 / eps) + log_ball_volume_neg(dim);
}

double entropy_asymptote(const EnvelopeSpec& spec, double eps) {
  check_eps(eps);
  const double l = std::log(1 / eps);
  return l * l / spec.alpha();
}

double haussler_redundancy(const std::function<double(double)>& h, double n) {
  if (!(n >= 2)) throw DomainError("redundancy asymptote needs n >= 2");
  return kNatsToBits * h(std::sqrt(n));
}

double minimax_asymptote(double n, double alpha) {
  if (!(n >= 2)) throw DomainError("redundancy asymptote needs n >= 2");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  const double l = std::log2(n);
  return l * l / (4 * alpha * kNatsToBits);
}

double expected_max_bound(const EnvelopeSpec& spec, double n) {
  if (!(n >= 1)) throw DomainError("expected maximum bound needs n >= 1");
  const double a = spec.alpha();
  return (std::log(n) + std::log(spec.C() / -std::expm1(-a)) + 1) / a;
}

double zeta(double alpha) {
  if (!(alpha > 1) || !std::isfinite(alpha))
    throw DomainError("zeta needs alpha > 1, got " + format_double(alpha));
  constexpr int kDirect = 32;
  double sum = 0;
  for (int k = kDirect - 1; k >= 1; --k) sum += std::pow(k, -alpha);
  // Euler-Maclaurin tail from K = kDirect; the first omitted term is below
  // 1e-14 for every alpha > 1.
  const double K = kDirect;
  const double a = alpha;
  const double fk = std::pow(K, -a);
  double tail = K * fk / (a - 1) + fk / 2 + a * fk / K / 12;
  tail -= a * (a + 1) * (a + 2) * fk / (K * K * K) / 720;
  tail += a * (a + 1) * (a + 2) * (a + 3) * (a + 4) * fk / std::pow(K, 5) / 30240;
  return sum + tail;
}

double power_law_constant(double alpha) {
  const double c = 1 / zeta(alpha);
  const double beta = 1 / alpha - 1;
  auto integrand = [c, beta](double u) {
    return -std::expm1(-c / u) * std::pow(u, beta);
  };
  // Quadrature on [1, U]; beyond U, expand 1 - e^{-c/u} in powers of c/u
  // and integrate term by term (alternating, fast since c/U << 1).
  constexpr double U = 64;
  const double body = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 1.0, U, 15, 1e-13);
  double tail = 0;
  double coeff = 1;  // c^j / j!
  for (int j = 1; j < 40; ++j) {
    coeff *= c / j;
    const double term = coeff * std::pow(U, beta - j + 1) / (j - beta - 1);
    tail += (j % 2 ? term : -term);
    if (term < 1e-18 * std::abs(tail)) break;
  }
  return (body + tail) / alpha;
}

PowerLawBounds power_law_bounds(double C, double alpha, double n) {
  if (!(alpha > 1)) throw DomainError("power-law bounds need alpha > 1");
  if (!(C > 1)) throw DomainError("power-law bounds need C > 1");
  if (!(n >= 2)) throw DomainError("power-law bounds need n >= 2");
  const double cells = std::floor(C * zeta(alpha));
  if (cells < 2) throw DomainError("power-law bounds need floor(C zeta(alpha)) >= 2");
  const double lower =
      power_law_constant(alpha) * std::pow(n, 1 / alpha) * std::log2(cells);
  const double upper = std::pow(2 * C * n / (alpha - 1), 1 / alpha) *
                       std::pow(std::log2(n), 1 - 1 / alpha);
  return {lower, upper};
}

double affinity_bound(const EnvelopeSpec& spec, double lambda) {
  if (!(lambda > 0)) throw DomainError("affinity bound needs lambda > 0");
  return std::pow(spec.mass(), lambda);
}

BoundCurve entropy_curve(const EnvelopeSpec& spec, std::span<const double> eps) {
  check_grid(eps);
  BoundCurve curve{"entropy",
                   {"alpha", "C", "epsilon", "n_epsilon", "m", "lower_nats",
                    "upper_nats", "asymptote_nats", "lower_ratio", "upper_ratio"},
                   2,
                   {},
                   "nats",
                   kNatsToBits};
  for (const double e : eps) {
    const double lower = entropy_lower(spec, e);
    const double upper = entropy_upper(spec, e);
    const double norm = entropy_asymptote(spec, e);
    curve.rows.push_back({spec.alpha(), spec.C(), e,
                          static_cast<double>(n_epsilon(spec, e)),
                          static_cast<double>(default_lower_dimension(spec, e)),
                          lower, upper, norm, lower / norm, upper / norm});
    check_row(curve.rows.back());
  }
  return curve;
}

BoundCurve redundancy_curve(double alpha, std::span<const double> n) {
  check_grid(n);
  BoundCurve curve{"redundancy", {"alpha", "n", "minimax_bits"}, 1, {}, "bits", 1.0};
  for (const double v : n) {
    curve.rows.push_back({alpha, v, minimax_asymptote(v, alpha)});
    check_row(curve.rows.back());
  }
  return curve;
}

BoundCurve power_law_curve(double C, double alpha, std::span<const double> n) {
  check_grid(n);
  BoundCurve curve{"powerlaw",
                   {"alpha", "C", "n", "lower_bits", "upper_bits", "A_alpha", "zeta"},
                   2,
                   {},
                   "bits",
                   1.0};
  const double a_alpha = power_law_constant(alpha);
  const double z = zeta(alpha);
  for (const double v : n) {
    const PowerLawBounds b = power_law_bounds(C, alpha, v);
    curve.rows.push_back({alpha, C, v, b.lower_bits, b.upper_bits, a_alpha, z});
    check_row(curve.rows.back());
  }
  return curve;
}

BoundCurve max_moment_curve(const EnvelopeSpec& spec, std::span<const double> n) {
  check_grid(n);
  BoundCurve curve{"maxmoment", {"alpha", "C", "n", "expected_max_bound"}, 2, {}, "symbols", 1.0};
  for (const double v : n) {
    curve.rows.push_back({spec.alpha(), spec.C(), v, expected_max_bound(spec, v)});
    check_row(curve.rows.back());
  }
  return curve;
}

void write_csv(const BoundCurve& curve, std::ostream& out) {
  for (std::size_t i = 0; i < curve.columns.size(); ++i)
    out << (i ? "," : "") << curve.columns[i];
  out << '\n';
  for (const auto& row : curve.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

}  // namespace accode::bounds
