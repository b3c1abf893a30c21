#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "accode/errors.hpp"
#include "accode/sources.hpp"

namespace accode {
namespace {

TEST(EnvelopeSpec, AdmissibilityAndSaturation) {
  const EnvelopeSpec s(8, 1);
  EXPECT_EQ(s.saturated(), 2u);  // 8/e > 1 > 8/e^3
  EXPECT_DOUBLE_EQ(s.f(1), 1.0);
  EXPECT_DOUBLE_EQ(s.f(2), 1.0);
  EXPECT_DOUBLE_EQ(s.f(3), 8 * std::exp(-3.0));
  EXPECT_THROW(s.f(0), DomainError);
  EXPECT_THROW(EnvelopeSpec(std::exp(2.0), 1), DomainError);
  EXPECT_THROW(EnvelopeSpec(8, 0), DomainError);
  EXPECT_THROW(EnvelopeSpec(8, -1), DomainError);
  EXPECT_NO_THROW(EnvelopeSpec(std::exp(2.0) * 1.0001, 1));
}

TEST(EnvelopeSpec, TailMatchesDirectSum) {
  for (const auto& [C, a] : {std::pair{8.0, 1.0}, {100.0, 0.3}, {3.0, 0.5}}) {
    const EnvelopeSpec s(C, a);
    for (std::uint64_t n = 0; n < 30; ++n) {
      double direct = 0;
      for (std::uint64_t k = n + 1; k < 5000; ++k) direct += s.f(k);
      EXPECT_NEAR(s.tail(n), direct, 1e-9 * direct) << C << " " << a << " " << n;
    }
  }
  // Value quoted for spec(8, 1).
  EXPECT_NEAR(EnvelopeSpec(8, 1).mass(), 2.6301, 5e-5);
}

TEST(SourceDist, GeometricBasics) {
  const auto g = SourceDist::geometric(0.25);
  EXPECT_DOUBLE_EQ(g.pmf(1), 0.75);
  EXPECT_DOUBLE_EQ(g.pmf(3), 0.75 * 0.0625);
  EXPECT_DOUBLE_EQ(g.tail(2), 0.0625);
  EXPECT_DOUBLE_EQ(g.mean(), 1 / 0.75);
  double h = 0;
  for (std::uint64_t k = 1; k < 200; ++k) h -= g.pmf(k) * std::log2(g.pmf(k));
  EXPECT_NEAR(g.entropy_bits(), h, 1e-12);
  EXPECT_THROW(SourceDist::geometric(1.0), DomainError);
  EXPECT_THROW(SourceDist::geometric(-0.1), DomainError);
}

TEST(SourceDist, ParseForms) {
  EXPECT_DOUBLE_EQ(std::get<Geometric>(SourceDist::parse("geom:q=0.5").kind()).q, 0.5);
  EXPECT_DOUBLE_EQ(std::get<Geometric>(SourceDist::parse("geom:rate=1").kind()).q,
                   std::exp(-1.0));
  EXPECT_EQ(std::get<PointMass>(SourceDist::parse("point:k=7").kind()).k, 7u);
  for (const char* bad : {"geom", "geom:q=x", "geom:p=0.5", "point:k=0", "point:k=-1",
                          "uniform:n=3", "geom:rate=0", "geom:q=0.5x"})
    EXPECT_THROW(SourceDist::parse(bad), DomainError) << bad;
  EXPECT_THROW(SourceDist::parse("explicit:/nonexistent/pmf.csv"), IoError);
}

TEST(SourceDist, DescribeRoundTrips) {
  for (const char* spec : {"geom:rate=1", "geom:q=0.125", "point:k=12"}) {
    const auto a = SourceDist::parse(spec);
    const auto b = SourceDist::parse(a.describe());
    EXPECT_EQ(a.describe(), b.describe());
    EXPECT_EQ(a.pmf(2), b.pmf(2));
  }
}

TEST(SourceDist, ExplicitFileWithCrlf) {
  const auto path = std::filesystem::temp_directory_path() / "accode_pmf_test.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "0.5\r\n0.25\r\n\r\n0.25\r\n";
  }
  const auto d = SourceDist::parse("explicit:" + path.string());
  EXPECT_DOUBLE_EQ(d.pmf(1), 0.5);
  EXPECT_DOUBLE_EQ(d.pmf(3), 0.25);
  EXPECT_DOUBLE_EQ(d.pmf(4), 0.0);
  EXPECT_DOUBLE_EQ(d.entropy_bits(), 1.5);
  EXPECT_DOUBLE_EQ(d.mean(), 1.75);
  std::filesystem::remove(path);
  EXPECT_THROW(SourceDist::explicit_pmf({0.5, 0.4}), DomainError);
  EXPECT_THROW(SourceDist::explicit_pmf({1.5, -0.5}), DomainError);
}

TEST(SourceDist, SamplingIsDeterministicAndMatchesLaw) {
  const auto g = SourceDist::geometric(std::exp(-1.0));
  Rng a(trial_seed(42, 3));
  Rng b(trial_seed(42, 3));
  EXPECT_EQ(g.sample_iid(100, a), g.sample_iid(100, b));
  EXPECT_NE(trial_seed(42, 3), trial_seed(42, 4));

  Rng rng(1);
  const int n = 200000;
  std::vector<int> hist(6);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const auto x = g.sample(rng);
    ASSERT_GE(x, 1u);
    sum += static_cast<double>(x);
    if (x <= 5) ++hist[x];
  }
  EXPECT_NEAR(sum / n, g.mean(), 0.01);
  for (std::uint64_t k = 1; k <= 5; ++k)
    EXPECT_NEAR(hist[k] / static_cast<double>(n), g.pmf(k), 0.005) << k;

  const auto e = SourceDist::explicit_pmf({0.2, 0.0, 0.8});
  for (int i = 0; i < 1000; ++i) EXPECT_NE(e.sample(rng), 2u);
  EXPECT_EQ(SourceDist::point(9).sample(rng), 9u);
}

TEST(SourceDist, UniformIsInOpenClosedUnit) {
  Rng rng(9);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform_open_closed(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(Membership, GeometricBoundary) {
  const EnvelopeSpec s(8, 1);
  EXPECT_TRUE(is_member(SourceDist::parse("geom:rate=1"), s));
  EXPECT_TRUE(is_member(SourceDist::geometric(0.2), s));
  // A rounded q = 0.3679 decays slower than e^{-k}.
  EXPECT_FALSE(is_member(SourceDist::geometric(0.3679), s));
  EXPECT_FALSE(is_member(SourceDist::geometric(0.5), s));
  // q = 0 is the point mass at 1.
  EXPECT_TRUE(is_member(SourceDist::geometric(0.0), s));
  EXPECT_TRUE(is_member(SourceDist::geometric(std::exp(-2.5)), EnvelopeSpec(150, 2.5)));
  EXPECT_FALSE(is_member(SourceDist::geometric(std::exp(-2.4)), EnvelopeSpec(150, 2.5)));
}

TEST(Membership, PointAndExplicit) {
  const EnvelopeSpec s(8, 1);
  EXPECT_TRUE(is_member(SourceDist::point(1), s));
  EXPECT_TRUE(is_member(SourceDist::point(2), s));
  EXPECT_FALSE(is_member(SourceDist::point(3), s));  // 8 e^{-3} < 1
  EXPECT_TRUE(is_member(SourceDist::explicit_pmf({0.5, 0.3, 0.2}), s));
  EXPECT_FALSE(is_member(SourceDist::explicit_pmf({0.5, 0.1, 0.1, 0.3}), s));
}

TEST(Hellinger, ClosedFormMatchesSeries) {
  const auto p = SourceDist::geometric(0.3);
  const auto q = SourceDist::geometric(0.6);
  // Independent oracle: a million-term direct sum.
  double sum = 0;
  for (int k = 1; k <= 1000000; ++k) {
    const double d = std::sqrt(0.7 * std::pow(0.3, k - 1)) - std::sqrt(0.4 * std::pow(0.6, k - 1));
    sum += d * d;
  }
  EXPECT_NEAR(hellinger(p, q), std::sqrt(sum), 1e-12);
  EXPECT_NEAR(hellinger(p, p), 0.0, 1e-7);
  EXPECT_NEAR(hellinger(SourceDist::point(1), SourceDist::point(2)), std::sqrt(2.0), 1e-15);
  const auto e = SourceDist::explicit_pmf({0.7, 0.21, 0.063, 0.027});
  double s2 = 0;
  for (std::uint64_t k = 1; k < 200; ++k) {
    const double d = std::sqrt(e.pmf(k)) - std::sqrt(p.pmf(k));
    s2 += d * d;
  }
  EXPECT_NEAR(hellinger(e, p), std::sqrt(s2), 1e-9);
}

}  // namespace
}  // namespace accode
