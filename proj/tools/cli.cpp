#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "accode/bounds.hpp"
#include "accode/codec.hpp"
#include "accode/errors.hpp"
#include "accode/format.hpp"
#include "accode/lab.hpp"
#include "accode/sources.hpp"

namespace accode::cli {
namespace {

enum class Format { kText, kVarint };

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

// `--out -` means the caller's stdout stream.
template <class Emit>
void write_output(const std::string& path, std::ostream& out, Emit emit) {
  if (path == "-") {
    emit(out);
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  emit(file);
  file.flush();
  if (!file) throw IoError("error writing '" + path + "'");
}

std::vector<std::uint64_t> parse_text(std::span<const std::uint8_t> data) {
  std::vector<std::uint64_t> xs;
  const std::string_view text(reinterpret_cast<const char*>(data.data()), data.size());
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto value = parse_u64(line);
    if (!value)
      throw DomainError("line " + std::to_string(line_no) + ": '" + std::string(line) +
                        "' is not a positive integer");
    if (*value == 0)
      throw DomainError("line " + std::to_string(line_no) + ": symbol must be ≥ 1");
    xs.push_back(*value);
  }
  return xs;
}

std::vector<std::uint64_t> parse_varint(std::span<const std::uint8_t> data) {
  std::vector<std::uint64_t> xs;
  std::size_t i = 0;
  while (i < data.size()) {
    const std::size_t offset = i;
    std::uint64_t value = 0;
    for (unsigned shift = 0;; shift += 7) {
      if (i == data.size())
        throw DomainError("offset " + std::to_string(offset) + ": truncated varint");
      const std::uint8_t byte = data[i++];
      const std::uint64_t group = byte & 0x7Fu;
      if (shift >= 64 || (shift > 0 && group >> (64 - shift)) != 0)
        throw DomainError("offset " + std::to_string(offset) +
                          ": varint exceeds 64 bits");
      value |= group << shift;
      if (!(byte & 0x80u)) break;
    }
    if (value == 0)
      throw DomainError("offset " + std::to_string(offset) + ": symbol must be ≥ 1");
    xs.push_back(value);
  }
  return xs;
}

std::vector<std::uint8_t> to_text(std::span<const std::uint64_t> xs) {
  std::string s;
  for (const auto x : xs) {
    s += std::to_string(x);
    s += '\n';
  }
  return {s.begin(), s.end()};
}

std::vector<std::uint8_t> to_varint(std::span<const std::uint64_t> xs) {
  std::vector<std::uint8_t> out;
  for (std::uint64_t x : xs) {
    while (x >= 0x80) {
      out.push_back(static_cast<std::uint8_t>(x | 0x80));
      x >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(x));
  }
  return out;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) items.push_back(item);
  if (items.empty()) throw DomainError("empty list");
  return items;
}

std::vector<double> parse_double_list(const std::string& csv, const char* flag) {
  std::vector<double> xs;
  for (const auto& item : split_list(csv)) {
    const auto v = parse_double(item);
    if (!v || !std::isfinite(*v))
      throw DomainError(std::string(flag) + ": '" + item + "' is not a number");
    xs.push_back(*v);
  }
  return xs;
}

// Accepts integers written as "1024" or "1e6".
std::vector<std::uint64_t> parse_count_list(const std::string& csv, const char* flag) {
  std::vector<std::uint64_t> xs;
  for (const auto& item : split_list(csv)) {
    if (const auto v = parse_u64(item)) {
      xs.push_back(*v);
      continue;
    }
    const auto d = parse_double(item);
    if (!d || !(*d >= 0) || *d != std::floor(*d) || *d >= 0x1.0p64)
      throw DomainError(std::string(flag) + ": '" + item + "' is not a whole number");
    xs.push_back(static_cast<std::uint64_t>(*d));
  }
  return xs;
}

struct CodecArgs {
  std::string in;
  std::string out;
  Format format = Format::kText;
};

struct BenchArgs {
  double alpha = 1;
  double C = 8;
  std::string source = "geom:rate=1";
  std::string n_list = "256,1024,4096,16384";
  std::uint64_t trials = 200;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string experiment = "redundancy";
  std::string out = "-";
};

struct BoundsArgs {
  double alpha = 1;
  double C = 8;
  std::string eps_list = "0.1,0.01,0.001,0.0001,1e-05,1e-06";
  std::string n_list = "1024";
  std::string out = "-";
};

int cmd_encode(const CodecArgs& a) {
  const auto data = read_file(a.in);
  const auto xs = a.format == Format::kText ? parse_text(data) : parse_varint(data);
  write_file(a.out, encode_message(xs));
  return kOk;
}

int cmd_decode(const CodecArgs& a, std::ostream& err) {
  const auto data = read_file(a.in);
  const Decoded d = decode_with_info(data);
  const std::uint64_t used = (d.bits_consumed + 7) / 8;
  if (data.size() > used)
    err << "warning: ignored " << data.size() - used
        << " trailing byte(s) after the codeword\n";
  write_file(a.out, a.format == Format::kText ? to_text(d.symbols) : to_varint(d.symbols));
  return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  lab::ExperimentConfig config{EnvelopeSpec(a.C, a.alpha), SourceDist::parse(a.source),
                               parse_count_list(a.n_list, "--n-list"), a.trials,
                               a.seed, a.threads};
  if (a.experiment == "redundancy") {
    const auto report = lab::run_redundancy(config);
    write_output(a.out, out, [&](std::ostream& o) { lab::emit_csv(report, o); });
  } else {
    const auto report = lab::run_max_experiment(config);
    write_output(a.out, out, [&](std::ostream& o) { lab::emit_csv(report, o); });
  }
  return kOk;
}

int cmd_bounds(const std::string& which, const BoundsArgs& a, std::ostream& out) {
  bounds::BoundCurve curve;
  if (which == "entropy") {
    curve = bounds::entropy_curve(EnvelopeSpec(a.C, a.alpha),
                                  parse_double_list(a.eps_list, "--eps"));
  } else if (which == "redundancy") {
    if (!(a.alpha > 0)) throw DomainError("--alpha must be positive");
    curve = bounds::redundancy_curve(a.alpha, parse_double_list(a.n_list, "--n"));
  } else if (which == "powerlaw") {
    curve = bounds::power_law_curve(a.C, a.alpha, parse_double_list(a.n_list, "--n"));
  } else {
    curve = bounds::max_moment_curve(EnvelopeSpec(a.C, a.alpha),
                                     parse_double_list(a.n_list, "--n"));
  }
  write_output(a.out, out, [&](std::ostream& o) { bounds::write_csv(curve, o); });
  return kOk;
}

void add_codec_options(CLI::App* cmd, CodecArgs& a) {
  cmd->add_option("--in", a.in, "Input file")->required();
  cmd->add_option("--out", a.out, "Output file")->required();
  cmd->add_option("--format", a.format, "Plaintext format: text (one integer per line) or varint (LEB128)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"text", Format::kText}, {"varint", Format::kVarint}}))
      ->capture_default_str();
}

void add_bound_options(CLI::App* cmd, BoundsArgs& a, bool needs_c, bool eps_grid) {
  cmd->add_option("--alpha", a.alpha, "Envelope decay rate")->capture_default_str();
  if (needs_c) cmd->add_option("--C", a.C, "Envelope constant")->capture_default_str();
  if (eps_grid)
    cmd->add_option("--eps,--eps-list", a.eps_list, "Comma-separated epsilon grid")
        ->capture_default_str();
  else
    cmd->add_option("--n,--n-list", a.n_list, "Comma-separated message lengths")
        ->capture_default_str();
  cmd->add_option("--out", a.out, "Output CSV file, - for stdout")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal integer codec with escape-censored adaptive coding, "
               "plus redundancy and bound experiments",
               args.empty() ? "accode" : args.front()};
  app.require_subcommand(1);

  CodecArgs enc_args;
  CodecArgs dec_args;
  CLI::App* encode = app.add_subcommand("encode", "Compress a sequence of positive integers");
  add_codec_options(encode, enc_args);
  CLI::App* decode = app.add_subcommand("decode", "Decompress a stream produced by encode");
  add_codec_options(decode, dec_args);

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Monte-Carlo redundancy or running-maximum experiment");
  bench->add_option("--alpha", bench_args.alpha, "Envelope decay rate")->capture_default_str();
  bench->add_option("--C", bench_args.C, "Envelope constant, must exceed e^(2 alpha)")
      ->capture_default_str();
  bench->add_option("--source", bench_args.source,
                    "geom:q=Q, geom:rate=R (q = e^-R), point:k=K or explicit:PATH")
      ->capture_default_str();
  bench->add_option("--n-list", bench_args.n_list, "Comma-separated, strictly increasing message lengths")
      ->capture_default_str();
  bench->add_option("--trials", bench_args.trials, "Messages per length")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Base seed")->capture_default_str();
  bench->add_option("--threads", bench_args.threads, "Worker threads, 0 for all cores")
      ->capture_default_str();
  bench->add_option("--experiment", bench_args.experiment, "redundancy or maxmoment")
      ->check(CLI::IsMember({"redundancy", "maxmoment"}))
      ->capture_default_str();
  bench->add_option("--out", bench_args.out, "Output CSV file, - for stdout")->capture_default_str();

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Evaluate closed-form bounds on a grid");
  bounds_cmd->require_subcommand(1);
  BoundsArgs entropy_args, redundancy_args, powerlaw_args, maxmoment_args;
  powerlaw_args.alpha = 2;
  powerlaw_args.C = 2;
  powerlaw_args.n_list = "100,1000,10000,100000,1000000";
  maxmoment_args.n_list = "10,100,1000";
  add_bound_options(bounds_cmd->add_subcommand("entropy", "Metric-entropy bracket (nats)"),
                    entropy_args, true, true);
  add_bound_options(bounds_cmd->add_subcommand("redundancy", "Minimax redundancy asymptote (bits)"),
                    redundancy_args, false, false);
  add_bound_options(bounds_cmd->add_subcommand("powerlaw", "Power-law class redundancy bounds (bits)"),
                    powerlaw_args, true, false);
  add_bound_options(bounds_cmd->add_subcommand("maxmoment", "Bound on the expected running maximum"),
                    maxmoment_args, true, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("accode");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    if (encode->parsed()) return cmd_encode(enc_args);
    if (decode->parsed()) return cmd_decode(dec_args, err);
    if (bench->parsed()) return cmd_bench(bench_args, out);
    for (const auto& [name, a] : {std::pair{"entropy", &entropy_args},
                                  {"redundancy", &redundancy_args},
                                  {"powerlaw", &powerlaw_args},
                                  {"maxmoment", &maxmoment_args}}) {
      if (bounds_cmd->get_subcommand(name)->parsed()) return cmd_bounds(name, *a, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace accode::cli
