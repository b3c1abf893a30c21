#include "accode/sources.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "accode/errors.hpp"
#include "accode/format.hpp"

namespace accode {
namespace {

constexpr double kMembershipSlack = 1e-12;
constexpr double kSeriesTolerance = 1e-16;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double xlog2x(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

}  // namespace

EnvelopeSpec::EnvelopeSpec(double C, double alpha) : c_(C), alpha_(alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw DomainError("envelope: alpha must be positive, got " +
                      format_double(alpha));
  if (!(C > std::exp(2 * alpha)) || !std::isfinite(C))
    throw DomainError("envelope: C must exceed e^(2 alpha) = " +
                      format_double(std::exp(2 * alpha)) + ", got " +
                      format_double(C));
  // Largest k with C e^{-alpha k} >= 1, corrected against rounding in the
  // floor of ln C / alpha.
  auto k = static_cast<std::uint64_t>(std::floor(std::log(C) / alpha));
  while (raw(static_cast<double>(k + 1)) >= 1.0) ++k;
  while (k > 0 && raw(static_cast<double>(k)) < 1.0) --k;
  saturated_ = k;
}

double EnvelopeSpec::raw(double k) const { return c_ * std::exp(-alpha_ * k); }

double EnvelopeSpec::f(std::uint64_t k) const {
  if (k == 0) throw DomainError("envelope is defined for k >= 1");
  return k <= saturated_ ? 1.0 : raw(static_cast<double>(k));
}

double EnvelopeSpec::tail(std::uint64_t n) const {
  const double first = std::max(n, saturated_) + 1;
  const double geometric = raw(first) / -std::expm1(-alpha_);
  return n >= saturated_ ? geometric
                         : static_cast<double>(saturated_ - n) + geometric;
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
  // splitmix64 finalizer over the golden-ratio combination.
  std::uint64_t z = base ^ (trial * 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform_open_closed(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

SourceDist::SourceDist(Kind kind) : kind_(std::move(kind)) {}

SourceDist SourceDist::geometric(double q) {
  if (!(q >= 0 && q < 1))
    throw DomainError("geometric: q must lie in [0, 1), got " + format_double(q));
  return SourceDist(Geometric{q});
}

SourceDist SourceDist::point(std::uint64_t k) {
  if (k == 0) throw DomainError("point mass: k must be >= 1");
  return SourceDist(PointMass{k});
}

SourceDist SourceDist::explicit_pmf(std::vector<double> probs,
                                    std::string origin) {
  if (probs.empty()) throw DomainError("explicit pmf: no probabilities");
  double sum = 0;
  for (const double p : probs) {
    if (!(p >= 0) || !std::isfinite(p))
      throw DomainError("explicit pmf: entries must be finite and >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DomainError("explicit pmf: probabilities sum to " +
                      format_double(sum) + ", not 1");
  SourceDist dist(ExplicitPmf{std::move(probs), std::move(origin)});
  const auto& stored = std::get<ExplicitPmf>(dist.kind_).probs;
  dist.cdf_.resize(stored.size());
  std::partial_sum(stored.begin(), stored.end(), dist.cdf_.begin());
  return dist;
}

SourceDist SourceDist::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw DomainError("source spec '" + std::string(spec) +
                      "': expected kind:parameters");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);

  auto param = [&](std::string_view key) -> std::optional<std::string_view> {
    if (rest.substr(0, key.size()) == key && rest.size() > key.size() &&
        rest[key.size()] == '=')
      return rest.substr(key.size() + 1);
    return std::nullopt;
  };
  auto bad = [&]() {
    return DomainError("source spec '" + std::string(spec) + "' is invalid");
  };

  if (kind == "geom") {
    if (auto q = param("q")) {
      const auto value = parse_double(*q);
      if (!value) throw bad();
      return geometric(*value);
    }
    if (auto rate = param("rate")) {
      const auto value = parse_double(*rate);
      if (!value || !(*value > 0)) throw bad();
      return geometric(std::exp(-*value));
    }
    throw bad();
  }
  if (kind == "point") {
    const auto k = param("k");
    const auto value = k ? parse_u64(*k) : std::nullopt;
    if (!value) throw bad();
    return point(*value);
  }
  if (kind == "explicit") {
    const std::string path(rest);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pmf file '" + path + "'");
    std::vector<double> probs;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto value = parse_double(line);
      if (!value)
        throw DomainError(path + ":" + std::to_string(number) +
                          ": not a probability");
      probs.push_back(*value);
    }
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return explicit_pmf(std::move(probs), path);
  }
  throw bad();
}

double SourceDist::pmf(std::uint64_t k) const {
  if (k == 0) return 0.0;
  return std::visit(
      Overloaded{
          [k](const Geometric& g) {
            return (1 - g.q) * std::pow(g.q, static_cast<double>(k - 1));
          },
          [k](const PointMass& p) { return k == p.k ? 1.0 : 0.0; },
          [k](const ExplicitPmf& e) {
            return k <= e.probs.size() ? e.probs[k - 1] : 0.0;
          }},
      kind_);
}

double SourceDist::tail(std::uint64_t k) const {
  return std::visit(
      Overloaded{
          [k](const Geometric& g) { return std::pow(g.q, static_cast<double>(k)); },
          [k](const PointMass& p) { return k < p.k ? 1.0 : 0.0; },
          [k, this](const ExplicitPmf& e) {
            if (k >= e.probs.size()) return 0.0;
            return k == 0 ? 1.0 : std::max(0.0, 1.0 - cdf_[k - 1]);
          }},
      kind_);
}

double SourceDist::mean() const {
  return std::visit(
      Overloaded{[](const Geometric& g) { return 1 / (1 - g.q); },
                 [](const PointMass& p) { return static_cast<double>(p.k); },
                 [](const ExplicitPmf& e) {
                   double m = 0;
                   for (std::size_t i = 0; i < e.probs.size(); ++i)
                     m += static_cast<double>(i + 1) * e.probs[i];
                   return m;
                 }},
      kind_);
}

double SourceDist::entropy_bits() const {
  return std::visit(
      Overloaded{[](const Geometric& g) {
                   // Binary entropy of q divided by the success probability.
                   return -(xlog2x(g.q) + xlog2x(1 - g.q)) / (1 - g.q);
                 },
                 [](const PointMass&) { return 0.0; },
                 [](const ExplicitPmf& e) {
                   double h = 0;
                   for (const double p : e.probs) h -= xlog2x(p);
                   return h;
                 }},
      kind_);
}

std::uint64_t SourceDist::sample(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&rng](const Geometric& g) -> std::uint64_t {
            const double u = uniform_open_closed(rng);
            if (g.q == 0) return 1;
            return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(g.q)));
          },
          [](const PointMass& p) { return p.k; },
          [&rng, this](const ExplicitPmf& e) -> std::uint64_t {
            const double u = uniform_open_closed(rng);
            auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
            if (it == cdf_.end()) {
              // u above a total rounded slightly below 1: last positive entry.
              std::size_t i = e.probs.size();
              while (i > 1 && e.probs[i - 1] == 0) --i;
              return i;
            }
            return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
          }},
      kind_);
}

std::vector<std::uint64_t> SourceDist::sample_iid(std::size_t n,
                                                  Rng& rng) const {
  std::vector<std::uint64_t> out(n);
  for (auto& x : out) x = sample(rng);
  return out;
}

std::string SourceDist::describe() const {
  return std::visit(
      Overloaded{[](const Geometric& g) { return "geom:q=" + format_double(g.q); },
                 [](const PointMass& p) { return "point:k=" + std::to_string(p.k); },
                 [](const ExplicitPmf& e) {
                   return e.origin.empty()
                              ? "explicit:" + std::to_string(e.probs.size()) + "-point"
                              : "explicit:" + e.origin;
                 }},
      kind_);
}

bool is_member(const SourceDist& dist, const EnvelopeSpec& spec) {
  auto within = [&spec](double p, std::uint64_t k) {
    return p <= spec.raw(static_cast<double>(k)) * (1 + kMembershipSlack);
  };
  return std::visit(
      Overloaded{
          [&](const Geometric& g) {
            if (g.q == 0) return within(1.0, 1);
            // P(k) / (C e^{-alpha k}) is geometric in k with ratio q e^alpha:
            // bounded iff the ratio is at most 1, then largest at k = 1.
            if (std::log(g.q) + spec.alpha() > kMembershipSlack) return false;
            return within(1 - g.q, 1);
          },
          [&](const PointMass& p) { return within(1.0, p.k); },
          [&](const ExplicitPmf& e) {
            for (std::size_t i = 0; i < e.probs.size(); ++i)
              if (!within(e.probs[i], i + 1)) return false;
            return true;
          }},
      dist.kind());
}

double hellinger(const SourceDist& p, const SourceDist& q) {
  const auto* gp = std::get_if<Geometric>(&p.kind());
  const auto* gq = std::get_if<Geometric>(&q.kind());
  if (gp && gq) {
    // Bhattacharyya coefficient of two geometric laws.
    const double bc = std::sqrt((1 - gp->q) * (1 - gq->q)) /
                      (1 - std::sqrt(gp->q * gq->q));
    return std::sqrt(std::max(0.0, 2 - 2 * bc));
  }
  double sum = 0;
  for (std::uint64_t k = 1;; ++k) {
    const double d = std::sqrt(p.pmf(k)) - std::sqrt(q.pmf(k));
    sum += d * d;
    if (p.tail(k) < kSeriesTolerance && q.tail(k) < kSeriesTolerance) break;
  }
  return std::sqrt(sum);
}

}  // namespace accode
