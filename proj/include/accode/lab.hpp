#pragma once

// Monte-Carlo experiments: ACcode redundancy against the analytic source
// entropy, and the empirical running maximum against its closed-form bound.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "accode/sources.hpp"

namespace accode::lab {

struct ExperimentConfig {
  EnvelopeSpec spec;
  SourceDist source;
  std::vector<std::uint64_t> n_list;  // strictly increasing, entries >= 1
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Worker threads; 0 picks the hardware concurrency. Results do not
  // depend on it.
  unsigned threads = 0;
};

struct RedundancyRow {
  std::uint64_t n = 0;
  double mean_code_bits = 0;  // codeword bits before byte padding
  double std_code_bits = 0;   // sample standard deviation over trials
  double entropy_bits = 0;    // n H(P)
  double mean_redundancy = 0;
  double theory_asymptote = 0;  // NaN for n < 2
  double ratio = 0;             // mean_redundancy / theory_asymptote
  // Trials whose arithmetic part exceeded
  // ceil(-log2 Q) + 1 + 2 (escapes + 1) + n 2^-20.
  std::uint64_t budget_violations = 0;
};

struct RedundancyReport {
  double alpha = 0;
  double C = 0;
  std::string source;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<RedundancyRow> rows;
};

struct MaxRow {
  std::uint64_t n = 0;
  double mean_max = 0;
  double std_max = 0;
  double bound = 0;
};

struct MaxReport {
  double alpha = 0;
  double C = 0;
  std::string source;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<MaxRow> rows;
};

// Seed of trial t at message length n.
std::uint64_t experiment_seed(std::uint64_t base, std::uint64_t n,
                              std::uint64_t trial);

// Throw DomainError on an invalid config and MembershipError when the
// source is outside the envelope class.
RedundancyReport run_redundancy(const ExperimentConfig& config);
MaxReport run_max_experiment(const ExperimentConfig& config);

void emit_csv(const RedundancyReport& report, std::ostream& out);
void emit_csv(const MaxReport& report, std::ostream& out);
// Throw IoError when the file cannot be written.
void emit_csv(const RedundancyReport& report, const std::filesystem::path& path);
void emit_csv(const MaxReport& report, const std::filesystem::path& path);

}  // namespace accode::lab
