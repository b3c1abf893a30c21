#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "accode/bounds.hpp"
#include "accode/errors.hpp"

namespace accode::bounds {
namespace {

// Brute-force tail: sum f(k) for k > n over enough terms.
double direct_tail(const EnvelopeSpec& s, std::uint64_t n) {
  double sum = 0;
  for (std::uint64_t k = 20000; k > n; --k) sum += s.f(k);
  return sum;
}

std::uint64_t brute_n_epsilon(const EnvelopeSpec& s, double eps) {
  std::uint64_t n = 1;
  while (direct_tail(s, n) > eps * eps / 16) ++n;
  return n;
}

// Exact alternating series for A(alpha), evaluated in long double.
double series_power_law_constant(double alpha) {
  const long double c = 1 / std::riemann_zeta(static_cast<long double>(alpha));
  long double sum = 0;
  long double coeff = 1;
  for (int j = 1; j < 60; ++j) {
    coeff *= c / j;
    const long double term = coeff / (j - 1 / static_cast<long double>(alpha));
    sum += (j % 2 ? term : -term);
  }
  return static_cast<double>(sum / alpha);
}

TEST(Bounds, NEpsilonAndLf) {
  const EnvelopeSpec s(8, 1);
  EXPECT_EQ(n_epsilon(s, 0.1), 9u);
  EXPECT_EQ(l_f(s), 2u);
  for (const auto& [C, a] : {std::pair{8.0, 1.0}, {50.0, 0.4}, {1000.0, 2.0}, {3.0, 0.5}})
    for (const double eps : {1.0, 0.5, 0.1, 1e-3, 1e-6}) {
      const EnvelopeSpec e(C, a);
      EXPECT_EQ(n_epsilon(e, eps), brute_n_epsilon(e, eps)) << C << " " << a << " " << eps;
    }
  EXPECT_THROW(n_epsilon(s, 0), DomainError);
  EXPECT_THROW(n_epsilon(s, -1), DomainError);
  EXPECT_THROW(n_epsilon(s, NAN), DomainError);
}

TEST(Bounds, BallVolume) {
  EXPECT_NEAR(log_ball_volume_neg(2), -std::log(std::numbers::pi), 1e-12);
  EXPECT_NEAR(log_ball_volume_neg(1), -std::log(2.0), 1e-12);
  EXPECT_NEAR(log_ball_volume_neg(3), -std::log(4 * std::numbers::pi / 3), 1e-12);
  for (std::uint64_t n = 1; n < 400; ++n)
    EXPECT_NEAR(log_ball_volume_neg(n + 2),
                log_ball_volume_neg(n) + std::log((n + 2) / 2.0) - std::log(std::numbers::pi),
                1e-9 * std::max(1.0, std::abs(log_ball_volume_neg(n + 2))));
  EXPECT_THROW(log_ball_volume_neg(0), DomainError);
}

TEST(Bounds, EntropyBracketFrozenValues) {
  // Reference values from an independent double-precision evaluation.
  const EnvelopeSpec s(8, 1);
  EXPECT_NEAR(entropy_lower(s, 0.1), 2.772910864197, 1e-9);
  EXPECT_NEAR(entropy_upper(s, 0.1), 26.175889221522, 1e-9);
  EXPECT_NEAR(entropy_lower(s, 1e-6), 193.500158260435, 1e-8);
  EXPECT_NEAR(entropy_upper(s, 1e-6), 291.332529081942, 1e-8);
  EXPECT_EQ(default_lower_dimension(s, 0.1), 4u);
  EXPECT_EQ(default_lower_dimension(s, 1e-6), 27u);
  EXPECT_NEAR(entropy_asymptote(s, 0.1), std::pow(std::log(10.0), 2), 1e-12);
}

TEST(Bounds, EntropyLowerNeedsPositiveDimension) {
  const EnvelopeSpec s(8, 1);
  EXPECT_THROW(entropy_lower(s, 0.9), DomainError);  // floor(2 ln(1/0.9)) = 0
  EXPECT_NO_THROW(entropy_lower(s, 0.9, 1));
  EXPECT_THROW(entropy_lower(s, 0.1, 0), DomainError);
}

TEST(Bounds, LowerBelowUpperAcrossClasses) {
  for (const auto& [C, a] : {std::pair{8.0, 1.0}, {100.0, 0.5}, {25.0, 1.5}})
    for (double eps = 0.3; eps > 1e-9; eps /= 3) {
      const EnvelopeSpec s(C, a);
      if (default_lower_dimension(s, eps) < 1) continue;
      EXPECT_LE(entropy_lower(s, eps), entropy_upper(s, eps)) << C << " " << a << " " << eps;
    }
}

TEST(Bounds, MinimaxAsymptote) {
  EXPECT_NEAR(minimax_asymptote(1024, 1), 17.3287, 1e-4);
  EXPECT_NEAR(minimax_asymptote(1024, 2), 17.3287 / 2, 1e-4);
  EXPECT_THROW(minimax_asymptote(1, 1), DomainError);
  EXPECT_THROW(minimax_asymptote(1024, 0), DomainError);
}

TEST(Bounds, HausslerMapping) {
  EXPECT_NEAR(haussler_redundancy([](double x) { return x; }, 100), 10 * kNatsToBits, 1e-12);
  // The first-order entropy term ln^2(1/eps)/alpha maps onto the minimax
  // asymptote.
  for (const double n : {16.0, 1024.0, 1e6})
    EXPECT_NEAR(haussler_redundancy([](double x) { return std::log(x) * std::log(x); }, n),
                minimax_asymptote(n, 1), 1e-9);
}

TEST(Bounds, ExpectedMaxBound) {
  const EnvelopeSpec s(8, 1);
  for (const double n : {1.0, 10.0, 1000.0})
    EXPECT_NEAR(expected_max_bound(s, n),
                std::log(n) + std::log(8 / (1 - std::exp(-1.0))) + 1, 1e-12);
  EXPECT_THROW(expected_max_bound(s, 0.5), DomainError);
}

TEST(Bounds, ZetaAgainstLibrary) {
  EXPECT_NEAR(zeta(2), std::numbers::pi * std::numbers::pi / 6, 1e-12);
  for (const double a : {1.0001, 1.01, 1.05, 1.5, 2.5, 3.0, 7.0, 30.0})
    EXPECT_NEAR(zeta(a), std::riemann_zeta(a), 1e-12 * std::riemann_zeta(a)) << a;
  EXPECT_THROW(zeta(1), DomainError);
  EXPECT_THROW(zeta(0.5), DomainError);
}

TEST(Bounds, PowerLawConstant) {
  // 40-digit evaluations of the alternating series.
  EXPECT_NEAR(power_law_constant(1.05), 0.97071312464870902, 1e-11);
  EXPECT_NEAR(power_law_constant(1.5), 0.73145616278025262, 1e-11);
  EXPECT_NEAR(power_law_constant(2), 0.55307830862986974, 1e-11);
  EXPECT_NEAR(power_law_constant(3), 0.35713959492163415, 1e-11);
  EXPECT_NEAR(power_law_constant(10), 0.08955146411603304, 1e-11);
  for (const double a : {1.2, 1.7, 2.2, 4.0, 6.0})
    EXPECT_NEAR(power_law_constant(a), series_power_law_constant(a), 1e-11) << a;
}

TEST(Bounds, PowerLawBracket) {
  for (double n = 100; n <= 1e6; n *= 10) {
    const auto b = power_law_bounds(2, 2, n);
    EXPECT_LE(b.lower_bits, b.upper_bits) << n;
    // floor(2 zeta(2)) = 3.
    EXPECT_NEAR(b.lower_bits, power_law_constant(2) * std::sqrt(n) * std::log2(3.0), 1e-9 * n);
  }
  EXPECT_THROW(power_law_bounds(2, 1, 100), DomainError);
  EXPECT_THROW(power_law_bounds(1.2, 2, 100), DomainError);  // floor(1.2 zeta(2)) = 1
  EXPECT_THROW(power_law_bounds(2, 2, 1), DomainError);
}

TEST(Bounds, Affinity) {
  const EnvelopeSpec s(8, 1);
  EXPECT_NEAR(affinity_bound(s, 1), s.mass(), 1e-15);
  EXPECT_NEAR(affinity_bound(s, 0.5), std::sqrt(s.mass()), 1e-15);
  EXPECT_THROW(affinity_bound(s, 0), DomainError);
}

TEST(Bounds, CurvesAndCsv) {
  const EnvelopeSpec s(8, 1);
  const std::vector<double> eps{0.1, 0.01, 0.001};
  const auto curve = entropy_curve(s, eps);
  ASSERT_EQ(curve.rows.size(), 3u);
  EXPECT_EQ(curve.columns[curve.grid_column], "epsilon");
  std::ostringstream out;
  write_csv(curve, out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "alpha,C,epsilon,n_epsilon,m,lower_nats,upper_nats,asymptote_nats,"
            "lower_ratio,upper_ratio");
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first.substr(0, 13), "1,8,0.1,9,4,2");

  const std::vector<double> ns{1024};
  std::ostringstream r;
  write_csv(redundancy_curve(1, ns), r);
  EXPECT_EQ(r.str(), "alpha,n,minimax_bits\n1,1024,17.328679513998633\n");

  const std::vector<double> bad{0.1, 0.1};
  EXPECT_THROW(entropy_curve(s, bad), DomainError);
  EXPECT_THROW(entropy_curve(s, {}), DomainError);
  const std::vector<double> small{1, 10};
  EXPECT_THROW(redundancy_curve(1, small), DomainError);
  EXPECT_EQ(max_moment_curve(s, small).rows.size(), 2u);
  const std::vector<double> pl{100, 1000};
  EXPECT_EQ(power_law_curve(2, 2, pl).rows.size(), 2u);
}

}  // namespace
}  // namespace accode::bounds
