#include "accode/lab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <thread>

#include "accode/bounds.hpp"
#include "accode/codec.hpp"
#include "accode/errors.hpp"
#include "accode/format.hpp"

namespace accode::lab {
namespace {

void validate(const ExperimentConfig& config) {
  if (config.trials == 0) throw DomainError("trials must be >= 1");
  if (config.n_list.empty()) throw DomainError("n_list is empty");
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (config.n_list[i] == 0) throw DomainError("message lengths must be >= 1");
    if (i > 0 && config.n_list[i] <= config.n_list[i - 1])
      throw DomainError("n_list must be strictly increasing");
  }
  if (!is_member(config.source, config.spec))
    throw MembershipError("source " + config.source.describe() +
                          " is not dominated by C e^{-alpha k} with C = " +
                          format_double(config.spec.C()) +
                          ", alpha = " + format_double(config.spec.alpha()));
}

unsigned worker_count(const ExperimentConfig& config) {
  unsigned t = config.threads ? config.threads : std::thread::hardware_concurrency();
  t = std::max(1u, t);
  return static_cast<unsigned>(std::min<std::uint64_t>(t, config.trials));
}

// Runs body(t) for every trial into a result slot, split into contiguous
// chunks across workers. Output order is the trial order.
template <class T, class Body>
std::vector<T> run_trials(const ExperimentConfig& config, Body body) {
  std::vector<T> results(config.trials);
  const unsigned workers = worker_count(config);
  const std::uint64_t chunk = (config.trials + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::uint64_t begin = 0; begin < config.trials; begin += chunk) {
    const std::uint64_t end = std::min(config.trials, begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&results, &body, begin, end] {
      for (std::uint64_t t = begin; t < end; ++t) results[t] = body(t);
    }));
  }
  for (auto& job : jobs) job.get();  // rethrows worker exceptions
  return results;
}

struct Moments {
  double mean;
  double std;
};

// Two-pass, in order.
Moments moments(const std::vector<double>& xs) {
  long double sum = 0;
  for (const double x : xs) sum += x;
  const long double mean = sum / static_cast<long double>(xs.size());
  if (xs.size() < 2) return {static_cast<double>(mean), 0.0};
  long double ss = 0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean),
          static_cast<double>(std::sqrt(ss / static_cast<long double>(xs.size() - 1)))};
}

bool within_budget(const EncodeTrace& trace) {
  const long double budget = std::ceil(trace.ideal_c1_bits) + 1 +
                             2.0L * static_cast<long double>(trace.escapes + 1) +
                             static_cast<long double>(trace.symbols) * 0x1.0p-20L;
  return static_cast<long double>(trace.c1_bits) <= budget;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

template <class Report>
void write_file(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_csv(report, out);
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace

std::uint64_t experiment_seed(std::uint64_t base, std::uint64_t n,
                              std::uint64_t trial) {
  return trial_seed(trial_seed(base, n), trial);
}

RedundancyReport run_redundancy(const ExperimentConfig& config) {
  validate(config);
  RedundancyReport report{config.spec.alpha(), config.spec.C(),
                          config.source.describe(), config.trials, config.seed, {}};
  const double entropy = config.source.entropy_bits();
  for (const std::uint64_t n : config.n_list) {
    struct Trial {
      double bits;
      bool ok;
    };
    const auto trials = run_trials<Trial>(config, [&](std::uint64_t t) {
      Rng rng(experiment_seed(config.seed, n, t));
      StreamEncoder encoder;
      for (std::uint64_t i = 0; i < n; ++i) encoder.push(config.source.sample(rng));
      encoder.finish();
      return Trial{static_cast<double>(encoder.bit_count()), within_budget(encoder.trace())};
    });
    std::vector<double> bits;
    bits.reserve(trials.size());
    RedundancyRow row;
    row.n = n;
    for (const Trial& t : trials) {
      bits.push_back(t.bits);
      row.budget_violations += t.ok ? 0 : 1;
    }
    const Moments m = moments(bits);
    row.mean_code_bits = m.mean;
    row.std_code_bits = m.std;
    row.entropy_bits = static_cast<double>(n) * entropy;
    row.mean_redundancy = row.mean_code_bits - row.entropy_bits;
    if (n >= 2) {
      row.theory_asymptote =
          bounds::minimax_asymptote(static_cast<double>(n), config.spec.alpha());
      row.ratio = row.mean_redundancy / row.theory_asymptote;
    } else {
      row.theory_asymptote = std::numeric_limits<double>::quiet_NaN();
      row.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(row);
  }
  return report;
}

MaxReport run_max_experiment(const ExperimentConfig& config) {
  validate(config);
  MaxReport report{config.spec.alpha(), config.spec.C(), config.source.describe(),
                   config.trials, config.seed, {}};
  for (const std::uint64_t n : config.n_list) {
    const auto maxima = run_trials<double>(config, [&](std::uint64_t t) {
      Rng rng(experiment_seed(config.seed, n, t));
      std::uint64_t m = 0;
      for (std::uint64_t i = 0; i < n; ++i) m = std::max(m, config.source.sample(rng));
      return static_cast<double>(m);
    });
    const Moments mo = moments(maxima);
    report.rows.push_back({n, mo.mean, mo.std,
                           bounds::expected_max_bound(config.spec, static_cast<double>(n))});
  }
  return report;
}

void emit_csv(const RedundancyReport& report, std::ostream& out) {
  out << "alpha,C,source,n,trials,seed,mean_code_bits,std_code_bits,"
         "entropy_bits,mean_redundancy,theory_asymptote,ratio\n";
  const std::string prefix = format_double(report.alpha) + "," +
                             format_double(report.C) + "," + csv_field(report.source);
  for (const auto& r : report.rows) {
    out << prefix << ',' << r.n << ',' << report.trials << ',' << report.seed << ','
        << format_double(r.mean_code_bits) << ',' << format_double(r.std_code_bits)
        << ',' << format_double(r.entropy_bits) << ','
        << format_double(r.mean_redundancy) << ','
        << format_double(r.theory_asymptote) << ',' << format_double(r.ratio) << '\n';
  }
}

void emit_csv(const MaxReport& report, std::ostream& out) {
  out << "alpha,C,source,n,trials,seed,mean_max,std_max,bound\n";
  const std::string prefix = format_double(report.alpha) + "," +
                             format_double(report.C) + "," + csv_field(report.source);
  for (const auto& r : report.rows) {
    out << prefix << ',' << r.n << ',' << report.trials << ',' << report.seed << ','
        << format_double(r.mean_max) << ',' << format_double(r.std_max) << ','
        << format_double(r.bound) << '\n';
  }
}

void emit_csv(const RedundancyReport& report, const std::filesystem::path& path) {
  write_file(report, path);
}

void emit_csv(const MaxReport& report, const std::filesystem::path& path) {
  write_file(report, path);
}

}  // namespace accode::lab
