#include "stochwave/cli.hpp"

#include "stochwave/autocorr.hpp"
#include "stochwave/frames.hpp"
#include "stochwave/monte_carlo.hpp"
#include "stochwave/waveform_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#ifndef STOCHWAVE_VERSION
#define STOCHWAVE_VERSION "0.0.0"
#endif

namespace stochwave::cli {

namespace {

using nlohmann::json;

constexpr const char* schema_line = "# stochwave-schema v1";

std::string g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::generate: return "generate";
    case Command::acorr: return "acorr";
    case Command::expect: return "expect";
    case Command::frame: return "frame";
    case Command::experiment: return "experiment";
  }
  return "unknown";
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "bin" || s == "binary") return OutputFormat::binary;
  throw ValidationError("--format must be csv|json|bin, got '" + s + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

// Config echo shared by every report. Thread count is omitted: results do
// not depend on it.
json config_echo(const RunConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  j["kind"] = c.kind;
  if (std::isfinite(c.params.epsilon)) j["epsilon"] = c.params.epsilon;
  j["dist"] = to_string(c.params.dist.kind());
  j["sigma"] = c.params.dist.scale();
  j["seed"] = c.params.seed;
  j["n"] = c.n;
  j["N"] = c.N;
  j["d"] = c.d;
  j["M"] = c.M;
  j["T"] = c.T;
  j["dt"] = c.dt;
  if (c.k) j["k"] = *c.k;
  if (c.s) j["s"] = *c.s;
  j["k_max"] = c.k_max;
  j["trials"] = c.trials;
  j["M_list"] = c.M_list;
  j["eps0"] = c.eps0;
  j["r"] = c.r;
  j["sparsity"] = c.sparsity;
  if (!c.in_path.empty()) j["in"] = c.in_path;
  return j;
}

std::string csv_echo(const RunConfig& c) {
  std::ostringstream os;
  os << schema_line << "\n# stochwave " << STOCHWAVE_VERSION << " command=" << to_string(c.command)
     << " kind=" << c.kind << " dist=" << to_string(c.params.dist.kind())
     << " sigma=" << g17(c.params.dist.scale()) << " epsilon=" << g17(c.params.epsilon)
     << " seed=" << c.params.seed << " N=" << c.N << " d=" << c.d << " trials=" << c.trials;
  if (c.command == Command::expect) os << " k_max=" << c.k_max;
  if (!c.M_list.empty()) {
    os << " M=";
    for (std::size_t i = 0; i < c.M_list.size(); ++i) os << (i ? "," : "") << c.M_list[i];
  }
  os << "\n";
  return os.str();
}

json report_base(const RunConfig& c) {
  json j;
  j["tool"] = "stochwave";
  j["version"] = STOCHWAVE_VERSION;
  j["config"] = config_echo(c);
  j["stream_seed"] = "trial t uses splitmix64(seed + 0x9E3779B97F4A7C15 * (t + 1))";
  return j;
}

OutputFormat effective_format(const RunConfig& c) {
  if (c.format) return *c.format;
  switch (c.command) {
    case Command::generate: return OutputFormat::binary;
    case Command::acorr: return OutputFormat::json;
    case Command::expect: return OutputFormat::csv;
    case Command::frame: return OutputFormat::json;
    case Command::experiment: return c.kind == "cond-vs-M" ? OutputFormat::csv : OutputFormat::json;
  }
  return OutputFormat::json;
}

void validate_params(const RunConfig& c) {
  require(std::isfinite(c.params.epsilon) && c.params.epsilon > 0.0,
          "--epsilon is required and must be > 0");
}

void validate_grid(double T, double dt, const char* what) {
  require(T > 0.0 && std::isfinite(T), std::string(what) + " must be > 0");
  require(dt > 0.0 && dt <= T, "--dt must satisfy 0 < dt <= " + std::string(what));
  const double ratio = T / dt;
  require(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio),
          std::string(what) + " must be a multiple of --dt");
}

// Table output: CSV with schema/echo header, or JSON rows.
void emit_table(const RunConfig& c, std::ostream& out, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, double seconds) {
  if (effective_format(c) == OutputFormat::json) {
    json j = report_base(c);
    j["rows"] = json::array();
    for (const auto& row : rows) {
      json r;
      for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = number_or_inf(row[i]);
      j["rows"].push_back(r);
    }
    j["duration_s"] = seconds;
    out << j.dump(2) << "\n";
    return;
  }
  out << csv_echo(c);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << g17(row[i]);
    out << "\n";
  }
}

void run_generate(const RunConfig& c, std::ostream& out) {
  const WaveformKind kind = parse_waveform_kind(c.kind);
  AnyWaveform w = [&]() -> AnyWaveform {
    switch (kind) {
      case WaveformKind::discrete: return generate_discrete(c.params, c.n);
      case WaveformKind::periodic: return generate_periodic(c.params, c.n);
      case WaveformKind::vector: return generate_vector(c.params, c.d, c.n);
      case WaveformKind::continuous: return generate_continuous(c.params, c.T, c.dt);
    }
    throw ValidationError("unknown waveform kind");
  }();
  if (effective_format(c) == OutputFormat::binary) write_binary(w, out);
  else write_csv(w, out);
}

void run_acorr(const RunConfig& c, std::ostream& out) {
  const AnyWaveform any = load_waveform(c.in_path);
  AutocorrEstimate est;
  switch (kind_of(any)) {
    case WaveformKind::discrete:
      require(c.k.has_value(), "--k is required for a discrete waveform");
      est = acorr_aperiodic(std::get<DiscreteWaveform>(any), *c.k, c.N);
      break;
    case WaveformKind::periodic:
      require(c.k.has_value(), "--k is required for a periodic waveform");
      est = acorr_periodic(std::get<PeriodicWaveform>(any), *c.k);
      break;
    case WaveformKind::vector:
      require(c.k.has_value(), "--k is required for a vector waveform");
      est = acorr_vector(std::get<VectorWaveform>(any), *c.k, c.N);
      break;
    case WaveformKind::continuous:
      require(c.s.has_value(), "--s is required for a continuous waveform");
      require(c.T > 0.0, "--T is required for a continuous waveform");
      est = acorr_continuous(std::get<ContinuousWaveform>(any), *c.s, c.T);
      break;
  }
  json j = report_base(c);
  j["kind"] = to_string(est.kind);
  if (est.kind == EstimatorKind::continuous) j["lag"] = est.lag;
  else j["lag"] = static_cast<Index>(est.lag);
  j["re"] = est.value.real();
  j["im"] = est.value.imag();
  if (est.kind == EstimatorKind::continuous) j["T"] = est.truncation;
  else j["N"] = est.truncation;
  if (effective_format(c) == OutputFormat::csv) {
    out << schema_line << "\nkind,lag,re,im,truncation\n"
        << to_string(est.kind) << ',' << g17(est.lag) << ',' << g17(est.value.real()) << ','
        << g17(est.value.imag()) << ',' << g17(est.truncation) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
}

std::vector<std::vector<double>> run_expect(const RunConfig& c) {
  EstimatorSpec spec;
  spec.kind = parse_estimator_kind(c.kind.empty() ? "aperiodic" : c.kind);
  spec.N = c.N;
  spec.d = c.d;
  std::vector<double> lags;
  for (Index k = 1; k <= c.k_max; ++k) lags.push_back(static_cast<double>(k));
  const auto stats = mc_expected_acorr(c.params, spec, lags, c.trials, c.threads);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const auto k = static_cast<Index>(lags[i]);
    const ClosedForm cf = variance_bounds(c.params.dist, c.params.epsilon, k);
    const MCStats& s = stats[i];
    rows.push_back({lags[i], cf.expected, s.mean.real(), s.mean.imag(), s.stderr_re, s.var_sample,
                    cf.variance_upper});
  }
  return rows;
}

json run_frame(const RunConfig& c) {
  const FrameKind kind = parse_frame_kind(c.kind);
  const WaveformParams first = c.params.with_stream(0);
  const FrameSet frame = kind == FrameKind::sliding ? build_sliding_frame(first, c.d, c.M)
                                                    : build_sensing_matrix(first, c.d, c.M);
  const FrameAnalysis a = analyze(frame);

  json j = report_base(c);
  j["eigenvalues"] = std::vector<double>(a.eigenvalues.begin(), a.eigenvalues.end());
  j["singular_values"] = std::vector<double>(a.singular_values.begin(), a.singular_values.end());
  j["condition_number"] = number_or_inf(a.condition_number);
  j["max_residual"] = a.max_residual;
  j["column_norms"] = {{"min", a.column_norms.min}, {"max", a.column_norms.max}, {"mean", a.column_norms.mean}};
  j["unit_norm"] = std::abs(a.column_norms.min - 1.0) < 1e-12 && std::abs(a.column_norms.max - 1.0) < 1e-12;
  if (a.alpha) {
    j["alpha"] = {{"re", a.alpha->real()}, {"im", a.alpha->imag()}, {"abs", std::abs(*a.alpha)}};
    j["closed_form_deviation"] = *a.closed_form_deviation;
  }
  if (c.d >= 2) {
    const BoundSet b = bounds(c.params.dist, c.params.epsilon, c.d, c.M);
    j["bounds"] = {{"delta", b.delta},       {"eig_lower", b.eig_lower}, {"eig_upper", b.eig_upper},
                   {"mp_lower", b.mp_lower}, {"mp_upper", b.mp_upper},   {"sigma_hat_sq", b.sigma_hat_sq}};
  }
  if (c.trials >= 2) {
    const auto spectra = sample_spectra(kind, c.params, c.d, c.M, c.trials, c.threads);
    std::vector<Complex> lo, hi, cond;
    for (const auto& s : spectra) {
      lo.emplace_back(s.lambda_min);
      hi.emplace_back(s.lambda_max);
      cond.emplace_back(s.condition_number);
    }
    const MCStats slo = summarize(lo), shi = summarize(hi), scond = summarize(cond);
    j["summary"] = {{"trials", c.trials},
                    {"mean_lambda_min", slo.mean.real()},
                    {"stderr_lambda_min", slo.stderr_re},
                    {"mean_lambda_max", shi.mean.real()},
                    {"stderr_lambda_max", shi.stderr_re},
                    {"mean_condition_number", number_or_inf(scond.mean.real())}};
  }
  return j;
}

json run_sv_tail(const RunConfig& c) {
  const SingularTailReport rep = singular_value_tail_check(c.params, c.d, c.M, c.eps0, c.r, c.trials, c.threads);
  json j = report_base(c);
  j["threshold"] = rep.threshold;
  j["frequency"] = rep.frequency;
  j["raw_frequency"] = rep.raw_frequency;
  j["bound"] = rep.bound;
  j["binomial_stderr"] = rep.binomial_stderr;
  j["within_bound"] = rep.within_bound;
  j["mean_largest_normalized"] = rep.mean_largest;
  j["min_smallest"] = rep.min_smallest;
  j["positive_smallest"] = rep.positive_smallest;
  return j;
}

json run_rip(const RunConfig& c) {
  const FrameSet frame = build_sensing_matrix(c.params.with_stream(0), c.d, c.M);
  const RipReport rep = rip_estimate(frame.vectors, c.sparsity, c.trials, stream_seed(c.params.seed, 1));
  json j = report_base(c);
  j["delta_estimate"] = rep.delta_estimate;
  j["is_lower_bound"] = true;
  j["column_norms"] = {{"min", rep.column_norms.min}, {"max", rep.column_norms.max}, {"mean", rep.column_norms.mean}};
  return j;
}

}  // namespace

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  auto to_index = [&](const std::string& s) -> Index {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ValidationError("bad integer '" + s + "' in list '" + text + "'");
    return static_cast<Index>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    require(parts.size() == 3, "range must be start:stop:step, got '" + text + "'");
    const Index a = to_index(parts[0]), b = to_index(parts[1]), step = to_index(parts[2]);
    require(step > 0 && a <= b, "range needs step > 0 and start <= stop: '" + text + "'");
    for (Index v = a; v <= b; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_index(p));
  }
  require(!out.empty(), "empty list '" + text + "'");
  return out;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  c.params.epsilon = std::numeric_limits<double>::quiet_NaN();
  c.threads = default_threads();
  std::string dist = "gaussian";
  double sigma = 1.0;
  std::string format;
  std::string m_text;
  Index k = 0;
  double s = 0.0;

  CLI::App app{"stochwave: unimodular stochastic waveforms, autocorrelation Monte Carlo, and random frames"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", c.params.seed, "Base 64-bit seed");
  app.add_option("--threads", c.threads, "Worker threads (default: STOCHWAVE_THREADS or hardware)");
  app.add_option("--out", c.out_path, "Output path (default stdout)");
  app.add_option("--format", format, "csv|json|bin");

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--epsilon", c.params.epsilon, "Phase parameter epsilon > 0");
    sub->add_option("--dist", dist, "gaussian|bilateral|cauchy");
    sub->add_option("--sigma", sigma, "Gaussian standard deviation");
  };

  auto* gen = app.add_subcommand("generate", "Generate a waveform realization");
  gen->add_option("--kind", c.kind, "discrete|periodic|vector|continuous")->required();
  add_params(gen);
  gen->add_option("--n", c.n, "n_max (discrete), period (periodic), or m_max (vector)");
  gen->add_option("--d", c.d, "Vector dimension");
  gen->add_option("--T", c.T, "Continuous horizon");
  gen->add_option("--dt", c.dt, "Continuous grid step");

  auto* acorr = app.add_subcommand("acorr", "Autocorrelation estimate of a stored waveform");
  acorr->add_option("--in", c.in_path, "Waveform file (binary or CSV)")->required();
  auto* k_opt = acorr->add_option("--k", k, "Integer lag");
  auto* s_opt = acorr->add_option("--s", s, "Continuous lag");
  k_opt->excludes(s_opt);
  acorr->add_option("--N", c.N, "Truncation N");
  acorr->add_option("--T", c.T, "Continuous truncation T");

  auto* expect = app.add_subcommand("expect", "Monte Carlo expected autocorrelation vs closed form");
  add_params(expect);
  expect->add_option("--kind", c.kind, "aperiodic|periodic|vector (default aperiodic)");
  expect->add_option("--k-max", c.k_max, "Largest lag")->required();
  expect->add_option("--trials", c.trials, "Monte Carlo trials")->required();
  expect->add_option("--N", c.N, "Truncation N (period n for periodic)")->required();
  expect->add_option("--d", c.d, "Vector dimension");

  auto* frame = app.add_subcommand("frame", "Frame operator spectrum and closed-form bounds");
  add_params(frame);
  frame->add_option("--kind", c.kind, "sliding|sensing")->required();
  frame->add_option("--d", c.d, "Dimension")->required();
  frame->add_option("--M", c.M, "Number of vectors")->required();
  frame->add_option("--trials", c.trials, "Trials for the summary block");

  auto* experiment = app.add_subcommand("experiment", "Batch experiments");
  experiment->add_option("name", c.kind, "cond-vs-M|sv-tail|rip")->required();
  add_params(experiment);
  experiment->add_option("--d", c.d, "Dimension");
  experiment->add_option("--M", m_text, "M (sv-tail, rip) or start:stop:step / list (cond-vs-M)");
  experiment->add_option("--trials", c.trials, "Trials");
  experiment->add_option("--eps0", c.eps0, "Slack eps0 of the largest-singular-value tail");
  experiment->add_option("--r", c.r, "Deviation r of the largest-singular-value tail");
  experiment->add_option("--k", c.sparsity, "Sparsity level for rip");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  if (gen->parsed()) c.command = Command::generate;
  else if (acorr->parsed()) c.command = Command::acorr;
  else if (expect->parsed()) c.command = Command::expect;
  else if (frame->parsed()) c.command = Command::frame;
  else c.command = Command::experiment;

  try {
    c.params.dist = Distribution::make(parse_distribution_kind(dist), sigma);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("--dist/--sigma: ") + e.what());
  }
  if (c.command == Command::expect && c.kind.empty()) c.kind = "aperiodic";
  if (*k_opt) c.k = k;
  if (*s_opt) c.s = s;
  if (c.out_path == "csv" || c.out_path == "json") {
    // "--out csv" selects the format and writes to stdout.
    if (format.empty()) format = c.out_path;
    c.out_path.clear();
  }
  if (!format.empty()) c.format = parse_format(format);
  if (!m_text.empty()) {
    c.M_list = parse_index_list(m_text);
    c.M = c.M_list.front();
  }
  return c;
}

void validate(const RunConfig& c) {
  require(c.threads >= 1, "--threads must be >= 1");
  const OutputFormat fmt = effective_format(c);
  switch (c.command) {
    case Command::generate: {
      validate_params(c);
      WaveformKind kind;
      try {
        kind = parse_waveform_kind(c.kind);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      require(fmt != OutputFormat::json, "generate writes csv or bin");
      switch (kind) {
        case WaveformKind::discrete: require(c.n >= 0, "--n (n_max) must be >= 0"); break;
        case WaveformKind::periodic: require(c.n >= 1, "--n (period) must be >= 1"); break;
        case WaveformKind::vector:
          require(c.d >= 2, "--d must be >= 2");
          require(c.n >= 0, "--n (m_max) must be >= 0");
          break;
        case WaveformKind::continuous:
          require(c.params.dist.kind() == DistributionKind::gaussian,
                  "continuous waveforms require --dist gaussian");
          validate_grid(c.T, c.dt, "--T");
          break;
      }
      break;
    }
    case Command::acorr: {
      require(!c.in_path.empty(), "--in is required");
      require(std::filesystem::exists(c.in_path), "--in: no such file '" + c.in_path + "'");
      require(c.k.has_value() || c.s.has_value(), "one of --k or --s is required");
      require(fmt != OutputFormat::binary, "acorr writes json or csv");
      if (c.s) require(c.T > 0.0, "--T must be > 0 for a continuous lag");
      break;
    }
    case Command::expect: {
      validate_params(c);
      EstimatorKind kind;
      try {
        kind = parse_estimator_kind(c.kind.empty() ? "aperiodic" : c.kind);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      require(kind != EstimatorKind::continuous, "expect supports aperiodic|periodic|vector");
      require(c.k_max >= 1, "--k-max must be >= 1");
      require(c.trials >= 2, "--trials must be >= 2");
      require(c.N >= 1, "--N must be >= 1");
      if (kind == EstimatorKind::vector) require(c.d >= 2, "--d must be >= 2");
      require(fmt != OutputFormat::binary, "expect writes csv or json");
      break;
    }
    case Command::frame: {
      validate_params(c);
      FrameKind kind;
      try {
        kind = parse_frame_kind(c.kind);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      require(c.d >= (kind == FrameKind::sliding ? 2 : 1),
              kind == FrameKind::sliding ? "--d must be >= 2" : "--d must be >= 1");
      require(c.M >= c.d, "--M must be >= --d");
      require(c.trials >= 1, "--trials must be >= 1");
      if (kind == FrameKind::sensing)
        require(c.params.dist.kind() == DistributionKind::gaussian, "sensing frames require --dist gaussian");
      require(fmt == OutputFormat::json, "frame writes json");
      break;
    }
    case Command::experiment: {
      validate_params(c);
      require(c.params.dist.kind() == DistributionKind::gaussian, "experiments use sensing matrices: --dist gaussian");
      require(!c.M_list.empty(), "--M is required");
      require(c.d >= 1, "--d must be >= 1");
      for (Index M : c.M_list) require(M >= c.d, "every --M value must be >= --d");
      if (c.kind == "cond-vs-M") {
        require(c.trials >= 1, "--trials must be >= 1");
        require(fmt != OutputFormat::binary, "cond-vs-M writes csv or json");
      } else if (c.kind == "sv-tail") {
        require(c.M_list.size() == 1, "sv-tail takes a single --M");
        require(c.trials >= 50, "--trials must be >= 50 for sv-tail");
        require(c.eps0 >= 0.0 && c.r >= 0.0, "--eps0 and --r must be >= 0");
        require(fmt == OutputFormat::json, "sv-tail writes json");
      } else if (c.kind == "rip") {
        require(c.M_list.size() == 1, "rip takes a single --M");
        require(c.trials >= 100, "--trials must be >= 100 for rip");
        require(c.sparsity >= 1 && c.sparsity <= c.d, "--k must satisfy 1 <= k <= d");
        require(fmt == OutputFormat::json, "rip writes json");
      } else {
        throw ValidationError("unknown experiment '" + c.kind + "' (expected cond-vs-M|sv-tail|rip)");
      }
      break;
    }
  }
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  try {
    validate(c);
    if (!c.out_path.empty()) {
      const bool binary = effective_format(c) == OutputFormat::binary;
      file.open(c.out_path, binary ? std::ios::binary | std::ios::out : std::ios::out);
      require(file.is_open(), "--out: cannot open '" + c.out_path + "' for writing");
    }
  } catch (const std::invalid_argument& e) {
    err << "stochwave: invalid configuration: " << e.what() << "\n";
    return exit_validation;
  }
  std::ostream& sink = c.out_path.empty() ? out : file;

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    switch (c.command) {
      case Command::generate: run_generate(c, sink); break;
      case Command::acorr: run_acorr(c, sink); break;
      case Command::expect:
        emit_table(c, sink, {"k", "closed_form", "mc_re", "mc_im", "stderr", "var_sample", "var_upper"},
                   run_expect(c), elapsed());
        break;
      case Command::frame: {
        json j = run_frame(c);
        j["duration_s"] = elapsed();
        sink << j.dump(2) << "\n";
        break;
      }
      case Command::experiment: {
        if (c.kind == "cond-vs-M") {
          const auto rows = condition_number_experiment(c.params, c.d, c.M_list, c.trials, c.threads);
          std::vector<std::vector<double>> table;
          for (const auto& r : rows) table.push_back({static_cast<double>(r.M), r.mean_cond, r.p5, r.p95});
          emit_table(c, sink, {"M", "mean_cond", "p5", "p95"}, table, elapsed());
        } else {
          json j = c.kind == "sv-tail" ? run_sv_tail(c) : run_rip(c);
          j["duration_s"] = elapsed();
          sink << j.dump(2) << "\n";
        }
        break;
      }
    }
    sink.flush();
    if (!sink) throw std::runtime_error("failed writing output");
  } catch (const FormatError& e) {
    err << "stochwave: waveform file error: " << e.what() << "\n";
    return exit_runtime;
  } catch (const std::invalid_argument& e) {
    err << "stochwave: invalid argument: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    err << "stochwave: error: " << e.what() << "\n";
    return exit_runtime;
  }
  err << "stochwave: " << to_string(c.command) << " finished in " << std::fixed << std::setprecision(3)
      << elapsed() << " s\n";
  return exit_ok;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_command_line(argc, argv, out);
  } catch (const std::invalid_argument& e) {
    err << "stochwave: " << e.what() << "\nRun with --help for usage.\n";
    return exit_validation;
  }
  if (!config) return exit_ok;
  return run(*config, out, err);
}

}  // namespace stochwave::cli
