#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "airate/allocation.hpp"
#include "airate/closed_form.hpp"
#include "airate/constellation.hpp"
#include "airate/errors.hpp"
#include "airate/exact_mi.hpp"
#include "airate/gauss_hermite.hpp"
#include "airate/rate.hpp"
#include "airate/snr.hpp"

namespace airate::cli {

namespace {

/// Bad user input detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, std::string, double, long long>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string render_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
  };
  return std::visit(Visitor{}, cell);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render_cell(row[i]);
    out << '\n';
  }
}

nlohmann::json to_json_value(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    }
    nlohmann::json operator()(long long v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = to_json_value(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

enum class Format { kCsv, kJson };

struct OutputOptions {
  std::string out_path;
  Format format = Format::kCsv;
};

void add_output_options(CLI::App& cmd, OutputOptions& opts) {
  cmd.add_option("--out", opts.out_path, "Write output to this file instead of stdout");
  cmd.add_option("--format", opts.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::kCsv}, {"json", Format::kJson}},
          CLI::ignore_case))
      ->option_text("csv|json [csv]");
}

// Writes `body` to --out or to `out`.
void emit(const OutputOptions& opts, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (opts.out_path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file: " + opts.out_path);
  body(file);
  if (!file) throw UsageError("failed writing output file: " + opts.out_path);
}

void emit_table(const OutputOptions& opts, std::ostream& out, const Table& table) {
  emit(opts, out, [&](std::ostream& os) {
    if (opts.format == Format::kJson) {
      os << to_json(table).dump(2) << '\n';
    } else {
      write_csv(table, os);
    }
  });
}

const std::map<std::string, Modulation> kModulations{{"pam", Modulation::kPam},
                                                    {"qam", Modulation::kQam}};

void add_modulation_option(CLI::App& cmd, Modulation& kind) {
  cmd.add_option("--modulation", kind, "Constellation family")
      ->required()
      ->transform(CLI::CheckedTransformer(kModulations, CLI::ignore_case))
      ->option_text("pam|qam REQUIRED");
}

std::string modulation_name(Modulation kind) { return kind == Modulation::kPam ? "pam" : "qam"; }

RateMethod to_method(const std::string& name) {
  if (auto m = parse_method(name)) return *m;
  throw UsageError("unknown method '" + name +
                   "' (expected exact-gh, exact-mc, approx, asymptotic, capacity or bound)");
}

struct NumericOptions {
  int gh_nodes = 64;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = McSpec{}.seed;
};

void add_numeric_options(CLI::App& cmd, NumericOptions& opts) {
  cmd.add_option("--gh-nodes", opts.gh_nodes, "Gauss-Hermite nodes")
      ->capture_default_str()
      ->check(CLI::Range(kMinQuadratureNodes, kMaxGaussHermiteNodes));
  cmd.add_option("--mc-samples", opts.mc_samples, "Monte-Carlo samples")
      ->capture_default_str()
      ->check(CLI::Range(kMinMcSamples, std::int64_t{1} << 40));
  cmd.add_option("--seed", opts.seed, "Monte-Carlo seed")->capture_default_str();
}

void require_asymptotic_support(const Constellation& c) {
  const bool ok = (c.kind() == Modulation::kPam && c.m() == 2) ||
                  (c.kind() == Modulation::kQam && c.m() == 4);
  if (!ok) throw UsageError("the asymptotic approximation covers only 2-PAM and 4-QAM");
}

// Rate of `method` for constellation `c`, in bits/symbol/dimension.
RateResult evaluate(const Constellation& c, Snr snr, RateMethod method,
                    const NumericOptions& opts) {
  switch (method) {
    case RateMethod::kExactGaussHermite:
      return exact_mi_quadrature(c, snr, QuadratureSpec{opts.gh_nodes});
    case RateMethod::kExactMonteCarlo:
      return exact_mi_montecarlo(c, snr, McSpec{opts.mc_samples, opts.seed});
    case RateMethod::kApproxSphere:
      return c.kind() == Modulation::kPam ? approx_pam(c.m(), snr) : approx_qam(c.m(), snr);
    case RateMethod::kApproxAsymptotic:
      require_asymptotic_support(c);
      return c.kind() == Modulation::kPam ? approx_asymptotic_bpsk(snr)
                                          : approx_asymptotic_qpsk(snr);
    case RateMethod::kCapacity:
      return capacity_awgn(snr);
    case RateMethod::kUpperBound:
      return rate_upper_bound(c.m(), c.dimension(), snr);
  }
  throw UsageError("unhandled method");
}

std::vector<std::string> rate_header(bool with_std_error) {
  std::vector<std::string> header{"snr_db", "snr_linear", "modulation", "m", "method",
                                  "rate_bits_per_sym_per_dim"};
  if (with_std_error) header.emplace_back("std_error");
  return header;
}

std::vector<Cell> rate_row(const Constellation& c, Snr snr, const RateResult& r,
                           bool with_std_error) {
  std::vector<Cell> row{snr.db(),
                        snr.linear(),
                        modulation_name(c.kind()),
                        static_cast<long long>(c.m()),
                        std::string(method_name(r.method)),
                        r.value};
  if (with_std_error) {
    row.push_back(r.std_error ? Cell{*r.std_error} : Cell{});
  }
  return row;
}

// SNR grid from..to (inclusive) with index-based stepping.
std::vector<double> snr_grid(double from, double to, double step) {
  if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step)) {
    throw UsageError("SNR range must be finite");
  }
  if (!(step > 0.0)) throw UsageError("--snr-db-step must be positive");
  if (from > to) throw UsageError("--snr-db-from must not exceed --snr-db-to");
  const auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
  if (count > 10'000'000) throw UsageError("SNR grid too large");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) grid.push_back(from + static_cast<double>(k) * step);
  return grid;
}

// ---------------------------------------------------------------------------

struct RateArgs {
  Modulation kind = Modulation::kPam;
  int m = 2;
  double snr_db = 0.0;
  std::vector<std::string> methods;
  NumericOptions numeric;
  OutputOptions output;
};

void cmd_rate(const RateArgs& a, std::ostream& out) {
  const Constellation c = make_constellation(a.kind, a.m);
  const Snr snr = Snr::from_db(a.snr_db);
  std::vector<RateMethod> methods;
  for (const auto& name : a.methods) methods.push_back(to_method(name));
  const bool with_se = std::ranges::count(methods, RateMethod::kExactMonteCarlo) > 0;

  Table table{rate_header(with_se), {}};
  for (RateMethod method : methods) {
    table.rows.push_back(rate_row(c, snr, evaluate(c, snr, method, a.numeric), with_se));
  }
  emit_table(a.output, out, table);
}

struct SweepArgs {
  Modulation kind = Modulation::kPam;
  std::vector<int> cardinalities;
  double from = -10.0;
  double to = 40.0;
  double step = 1.0;
  std::vector<std::string> methods{"exact-gh", "approx", "capacity"};
  NumericOptions numeric;
  OutputOptions output;
};

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
  std::vector<RateMethod> methods;
  for (const auto& name : a.methods) methods.push_back(to_method(name));
  std::ranges::sort(methods, {}, [](RateMethod m) { return method_name(m); });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<int> ms = a.cardinalities;
  std::ranges::sort(ms);
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<Constellation> constellations;
  for (int m : ms) constellations.push_back(make_constellation(a.kind, m));

  const std::vector<double> grid = snr_grid(a.from, a.to, a.step);
  const bool with_se = std::ranges::count(methods, RateMethod::kExactMonteCarlo) > 0;

  Table table{rate_header(with_se), {}};
  for (const auto& c : constellations) {
    for (RateMethod method : methods) {
      for (double db : grid) {
        const Snr snr = Snr::from_db(db);
        table.rows.push_back(rate_row(c, snr, evaluate(c, snr, method, a.numeric), with_se));
      }
    }
  }
  emit_table(a.output, out, table);
}

struct AccuracyArgs {
  Modulation kind = Modulation::kPam;
  int m = 2;
  double from = -10.0;
  double to = 40.0;
  double step = 0.25;
  std::string approx = "sphere";
  NumericOptions numeric;
  OutputOptions output;
};

void cmd_accuracy(const AccuracyArgs& a, std::ostream& out) {
  const Constellation c = make_constellation(a.kind, a.m);
  const RateMethod method =
      a.approx == "asymptotic" ? RateMethod::kApproxAsymptotic : RateMethod::kApproxSphere;
  if (method == RateMethod::kApproxAsymptotic) require_asymptotic_support(c);

  double max_abs = 0.0;
  double argmax_abs = a.from;
  double max_rel_exact = 0.0;
  double argmax_rel = a.from;
  const auto grid = snr_grid(a.from, a.to, a.step);
  for (double db : grid) {
    const Snr snr = Snr::from_db(db);
    const double exact = evaluate(c, snr, RateMethod::kExactGaussHermite, a.numeric).value;
    const double approx = evaluate(c, snr, method, a.numeric).value;
    const double abs_err = std::abs(approx - exact);
    if (abs_err > max_abs) {
      max_abs = abs_err;
      argmax_abs = db;
    }
    if (exact > 0.0 && abs_err / exact > max_rel_exact) {
      max_rel_exact = abs_err / exact;
      argmax_rel = db;
    }
  }

  Table table{{"modulation", "m", "approx", "snr_db_from", "snr_db_to", "snr_db_step", "points",
               "max_abs_error", "argmax_abs_snr_db", "max_rel_entropy_error",
               "max_rel_exact_error", "argmax_rel_exact_snr_db"},
              {}};
  table.rows.push_back({modulation_name(c.kind()), static_cast<long long>(c.m()), a.approx,
                        a.from, a.to, a.step, static_cast<long long>(grid.size()), max_abs,
                        argmax_abs, max_abs / c.entropy(), max_rel_exact, argmax_rel});
  emit_table(a.output, out, table);
}

struct MminArgs {
  Modulation kind = Modulation::kPam;
  double snr_db = 0.0;
  OutputOptions output;
};

void cmd_mmin(const MminArgs& a, std::ostream& out) {
  const Snr snr = Snr::from_db(a.snr_db);
  const MminResult r = mmin(snr, a.kind);
  Table table{{"snr_db", "snr_linear", "modulation", "exact_value", "rounded_pow2", "upper_bound"},
              {}};
  table.rows.push_back({snr.db(), snr.linear(), modulation_name(a.kind), r.exact_value,
                        r.rounded_pow2,
                        a.kind == Modulation::kPam ? Cell{r.upper_bound} : Cell{}});
  emit_table(a.output, out, table);
}

struct AllocateArgs {
  std::vector<double> gains;
  std::vector<int> cardinalities;
  double budget = 1.0;
  double tolerance = 1e-10;
  OutputOptions output;
};

void cmd_allocate(const AllocateArgs& a, std::ostream& out) {
  if (a.gains.size() != a.cardinalities.size()) {
    throw UsageError("--gains and --m must list the same number of streams");
  }
  const AllocationProblem problem{a.gains, a.cardinalities, a.budget, a.tolerance};
  const AllocationSolution sol = allocate(problem);

  Table streams{{"stream", "gain", "m", "power", "rate"}, {}};
  for (std::size_t k = 0; k < sol.powers.size(); ++k) {
    streams.rows.push_back({static_cast<long long>(k), a.gains[k],
                            static_cast<long long>(a.cardinalities[k]), sol.powers[k],
                            sol.rates[k]});
  }
  Table summary{{"objective", "lambda", "kkt_residual"},
                {{sol.objective, sol.lambda, sol.kkt_residual}}};

  emit(a.output, out, [&](std::ostream& os) {
    if (a.output.format == Format::kJson) {
      nlohmann::json doc{{"streams", to_json(streams)}, {"summary", to_json(summary)[0]}};
      os << doc.dump(2) << '\n';
    } else {
      write_csv(streams, os);
      os << '\n';
      write_csv(summary, os);
    }
  });
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Achievable information rates of PAM/QAM over AWGN", "airate"};
  app.require_subcommand(1);

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Rate at a single SNR for one or more methods");
  add_modulation_option(*rate_cmd, rate.kind);
  rate_cmd->add_option("--m", rate.m, "Constellation cardinality")->required();
  rate_cmd->add_option("--snr-db", rate.snr_db, "SNR in dB")->required();
  rate_cmd->add_option("--method", rate.methods, "Comma-separated from exact-gh, exact-mc, approx, asymptotic, capacity, bound")
      ->required()
      ->delimiter(',');
  add_numeric_options(*rate_cmd, rate.numeric);
  add_output_options(*rate_cmd, rate.output);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Rate curves over an SNR range");
  add_modulation_option(*sweep_cmd, sweep.kind);
  sweep_cmd->add_option("--m", sweep.cardinalities, "Comma-separated cardinalities")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--snr-db-from", sweep.from, "First SNR in dB")->capture_default_str();
  sweep_cmd->add_option("--snr-db-to", sweep.to, "Last SNR in dB, inclusive")->capture_default_str();
  sweep_cmd->add_option("--snr-db-step", sweep.step, "SNR step in dB")->capture_default_str();
  sweep_cmd->add_option("--methods,--method", sweep.methods, "Comma-separated from exact-gh, exact-mc, approx, asymptotic, capacity, bound")
      ->delimiter(',')
      ->capture_default_str();
  add_numeric_options(*sweep_cmd, sweep.numeric);
  add_output_options(*sweep_cmd, sweep.output);

  AccuracyArgs accuracy;
  auto* accuracy_cmd =
      app.add_subcommand("accuracy", "Worst-case error of an approximation against exact MI");
  add_modulation_option(*accuracy_cmd, accuracy.kind);
  accuracy_cmd->add_option("--m", accuracy.m, "Constellation cardinality")->required();
  accuracy_cmd->add_option("--snr-db-from", accuracy.from, "First SNR in dB")->capture_default_str();
  accuracy_cmd->add_option("--snr-db-to", accuracy.to, "Last SNR in dB, inclusive")->capture_default_str();
  accuracy_cmd->add_option("--snr-db-step", accuracy.step, "SNR step in dB")->capture_default_str();
  accuracy_cmd->add_option("--approx", accuracy.approx, "Approximation to assess")
      ->check(CLI::IsMember({"sphere", "asymptotic"}))
      ->capture_default_str();
  add_numeric_options(*accuracy_cmd, accuracy.numeric);
  add_output_options(*accuracy_cmd, accuracy.output);

  MminArgs mmin_args;
  auto* mmin_cmd = app.add_subcommand("mmin", "Minimum cardinality to approach capacity");
  add_modulation_option(*mmin_cmd, mmin_args.kind);
  mmin_cmd->add_option("--snr-db", mmin_args.snr_db, "SNR in dB")->required();
  add_output_options(*mmin_cmd, mmin_args.output);

  AllocateArgs alloc;
  auto* alloc_cmd = app.add_subcommand("allocate", "Sum-rate power allocation over streams");
  alloc_cmd->add_option("--gains", alloc.gains, "Comma-separated stream gains")
      ->required()
      ->delimiter(',');
  alloc_cmd->add_option("--m", alloc.cardinalities, "Comma-separated PAM cardinalities")
      ->required()
      ->delimiter(',');
  alloc_cmd->add_option("--budget", alloc.budget, "Total power")->required();
  alloc_cmd->add_option("--tolerance", alloc.tolerance, "Relative power-balance tolerance")->capture_default_str();
  add_output_options(*alloc_cmd, alloc.output);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*rate_cmd) cmd_rate(rate, out);
    if (*sweep_cmd) cmd_sweep(sweep, out);
    if (*accuracy_cmd) cmd_accuracy(accuracy, out);
    if (*mmin_cmd) cmd_mmin(mmin_args, out);
    if (*alloc_cmd) cmd_allocate(alloc, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CardinalityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConvergenceError& e) {
    err << "solver did not converge: " << e.what() << '\n';
    return kNoConvergence;
  }
  return kOk;
}

}  // namespace airate::cli
