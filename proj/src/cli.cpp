#include "doplab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "doplab/char_poly.hpp"
#include "doplab/discrete_operator.hpp"
#include "doplab/errors.hpp"
#include "doplab/euler_frobenius.hpp"
#include "doplab/precision.hpp"
#include "doplab/report.hpp"
#include "doplab/verify.hpp"

namespace doplab::cli {

namespace {

struct RunConfig {
  std::string command;
  int m = 0;
  std::string omega_text;
  int n = 0;
  long long beta_max = 10;
  unsigned precision_bits = 256;
  std::string tolerance_text;
  std::string format = "json";
  std::string out_path;
  long long gamma_max = 0;
  std::string perturb_lead_text;
  int k = -1;
  std::string grid_path;
  std::string from_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_decimal(const std::string& text) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  return end == begin + text.size() && std::isfinite(v);
}

Real parse_number(const std::string& text, const char* what) {
  if (!is_decimal(text)) throw UsageError(std::string(what) + " is not a number: '" + text + "'");
  return parse_real(text);
}

OperatorParams<Real> make_params(const RunConfig& cfg) {
  OperatorParams<Real> params;
  params.m = cfg.m;
  params.omega = parse_number(cfg.omega_text, "omega");
  params.N = cfg.n;
  params.validate();
  return params;
}

PrecisionContext make_context(const RunConfig& cfg) {
  PrecisionContext ctx = PrecisionContext::with_bits(cfg.precision_bits);
  ctx.validate();
  return ctx;
}

std::optional<Real> tolerance_of(const RunConfig& cfg) {
  if (cfg.tolerance_text.empty()) return std::nullopt;
  Real tol = parse_number(cfg.tolerance_text, "tolerance");
  if (!(tol > 0)) throw ParameterError("tolerance must be > 0");
  return tol;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.out_path + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  if (cfg.beta_max < 0) throw ParameterError("beta-max must be >= 0");
  const PrecisionContext ctx = make_context(cfg);
  ScopedPrecision precision(ctx);
  const auto params = make_params(cfg);
  const auto op = build_operator(params, ctx);
  if (cfg.format == "csv")
    emit(cfg, operator_table_csv(op, cfg.beta_max), out);
  else
    emit(cfg, dump(operator_to_json(op, cfg.beta_max, cfg.precision_bits)), out);
  return kSuccess;
}

SuiteOptions suite_options(const RunConfig& cfg) {
  if (cfg.beta_max < 0) throw ParameterError("beta-max must be >= 0");
  if (cfg.gamma_max < 0) throw ParameterError("gamma-max must be >= 0");
  SuiteOptions options;
  options.beta_max = cfg.beta_max;
  options.gamma_max = cfg.gamma_max;
  options.tolerance = tolerance_of(cfg);
  if (!cfg.perturb_lead_text.empty()) options.perturb_lead = parse_number(cfg.perturb_lead_text, "perturb-lead");
  return options;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.applicable && !r.passed) return false;
  return true;
}

Json suite_json(const std::vector<VerificationReport>& reports) {
  Json list = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    list.push_back(report_to_json(r));
    if (!r.applicable)
      ++skipped;
    else if (r.passed)
      ++passed;
    else
      ++failed;
  }
  Json j;
  j["reports"] = list;
  j["summary"] = {{"passed", passed}, {"failed", failed}, {"not_applicable", skipped}, {"all_passed", failed == 0}};
  return j;
}

void load_build_artifact(RunConfig& cfg) {
  std::ifstream file(cfg.from_path);
  if (!file) throw UsageError("cannot read build artifact '" + cfg.from_path + "'");
  Json j;
  try {
    j = Json::parse(file);
    const Json& meta = j.at("metadata");
    cfg.m = meta.at("m").get<int>();
    cfg.omega_text = meta.at("omega").get<std::string>();
    cfg.n = meta.at("N").get<int>();
    cfg.precision_bits = meta.at("precision_bits").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed build artifact: " + std::string(e.what()));
  }
}

int cmd_verify(RunConfig cfg, std::ostream& out) {
  if (!cfg.from_path.empty()) load_build_artifact(cfg);
  if (cfg.m == 0 || cfg.omega_text.empty() || cfg.n == 0)
    throw UsageError("verify needs --m, --omega and --n (or --from)");
  const PrecisionContext ctx = make_context(cfg);
  ScopedPrecision precision(ctx);
  const auto params = make_params(cfg);
  const auto reports = run_suite(params, ctx, suite_options(cfg));
  if (cfg.format == "csv")
    emit(cfg, reports_to_csv(reports), out);
  else
    emit(cfg, dump(suite_json(reports)), out);
  return all_passed(reports) ? kSuccess : kIdentityFailure;
}

int cmd_poly(const RunConfig& cfg, std::ostream& out) {
  const PrecisionContext ctx = make_context(cfg);
  ScopedPrecision precision(ctx);
  const auto params = make_params(cfg);
  const auto cp = build_char_poly(params, ctx);
  const auto coeffs = coefficient_strings(cp.poly);
  if (cfg.format == "csv") {
    emit(cfg, coefficients_csv(coeffs), out);
  } else {
    Json j = params_to_json(params);
    j["precision_bits"] = cfg.precision_bits;
    j["coefficients"] = coeffs;
    emit(cfg, dump(j), out);
  }
  return kSuccess;
}

int cmd_euler(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k < 0) throw ParameterError("k must be >= 0");
  const auto coeffs = coefficient_strings(ef_coefficients(static_cast<unsigned>(cfg.k)));
  if (cfg.format == "csv") {
    emit(cfg, coefficients_csv(coeffs), out);
  } else {
    Json j;
    j["k"] = cfg.k;
    j["coefficients"] = coeffs;
    emit(cfg, dump(j), out);
  }
  return kSuccess;
}

struct GridRow {
  int line = 0;
  int m = 0;
  std::string omega;
  int n = 0;
};

std::vector<GridRow> read_grid(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read grid file '" + path + "'");
  std::vector<GridRow> rows;
  std::string text;
  int line = 0;
  while (std::getline(file, text)) {
    ++line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    for (char& c : text)
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    std::istringstream is(text);
    std::vector<std::string> fields;
    for (std::string f; is >> f;) fields.push_back(f);
    if (fields.empty()) continue;
    auto malformed = [&](const std::string& why) {
      return UsageError("malformed grid line " + std::to_string(line) + ": " + why);
    };
    if (fields.size() != 3) throw malformed("expected 'm omega N'");
    GridRow row;
    row.line = line;
    try {
      std::size_t used = 0;
      row.m = std::stoi(fields[0], &used);
      if (used != fields[0].size()) throw malformed("m is not an integer");
      row.n = std::stoi(fields[2], &used);
      if (used != fields[2].size()) throw malformed("N is not an integer");
    } catch (const std::logic_error&) {
      throw malformed("m and N must be integers");
    }
    if (!is_decimal(fields[1])) throw malformed("omega is not a number");
    row.omega = fields[1];
    rows.push_back(row);
  }
  if (rows.empty()) throw UsageError("empty grid");
  return rows;
}

struct RowResult {
  Json json;
  bool passed = false;
};

RowResult run_row(const GridRow& row, const PrecisionContext& ctx, const SuiteOptions& options) {
  RowResult result;
  Json j;
  j["line"] = row.line;
  OperatorParams<Real> params;
  params.m = row.m;
  params.omega = parse_real(row.omega);
  params.N = row.n;
  j["params"] = params_to_json(params);
  if (const std::string v = params.violations(); !v.empty()) {
    j["status"] = "invalid params";
    j["message"] = v;
    result.json = j;
    return result;
  }
  try {
    const auto reports = run_suite(params, ctx, options);
    result.passed = all_passed(reports);
    j["status"] = result.passed ? "passed" : "failed";
    j["verification"] = suite_json(reports);
  } catch (const DegenerateError& e) {
    j["status"] = "degenerate";
    j["message"] = e.what();
  } catch (const ParameterError& e) {
    j["status"] = "invalid params";
    j["message"] = e.what();
  }
  result.json = j;
  return result;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.grid_path.empty()) throw UsageError("sweep needs --grid PATH");
  const PrecisionContext ctx = make_context(cfg);
  ScopedPrecision precision(ctx);
  const SuiteOptions options = suite_options(cfg);
  const std::vector<GridRow> rows = read_grid(cfg.grid_path);

  // fan out in waves of hardware_concurrency; results keep grid order
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<RowResult> results(rows.size());
  for (std::size_t start = 0; start < rows.size(); start += workers) {
    std::vector<std::future<RowResult>> wave;
    const std::size_t stop = std::min(rows.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i)
      wave.push_back(std::async(std::launch::async, run_row, std::cref(rows[i]), std::cref(ctx), std::cref(options)));
    for (std::size_t i = start; i < stop; ++i) results[i] = wave[i - start].get();
  }

  std::size_t passed = 0;
  Json runs = Json::array();
  for (auto& r : results) {
    passed += r.passed ? 1 : 0;
    runs.push_back(std::move(r.json));
  }
  const std::string summary = std::to_string(passed) + "/" + std::to_string(rows.size()) + " passed";
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "line,m,omega,n,status\n";
    for (const auto& r : runs)
      os << r["line"].get<int>() << ',' << r["params"]["m"].get<int>() << ','
         << r["params"]["omega"].get<std::string>() << ',' << r["params"]["n"].get<int>() << ','
         << r["status"].get<std::string>() << '\n';
    os << "summary," << summary << '\n';
    emit(cfg, os.str(), out);
  } else {
    Json j;
    j["runs"] = runs;
    j["summary"] = {{"passed", passed}, {"total", rows.size()}, {"text", summary}};
    emit(cfg, dump(j), out);
  }
  return passed == rows.size() ? kSuccess : kIdentityFailure;
}

void add_operator_options(CLI::App* sub, RunConfig& cfg, bool required) {
  auto* m = sub->add_option("--m", cfg.m, "operator order parameter (m >= 2)");
  auto* omega = sub->add_option("--omega", cfg.omega_text, "frequency omega > 0");
  auto* n = sub->add_option("--n", cfg.n, "grid count N, h = 1/N");
  if (required) {
    m->required();
    omega->required();
    n->required();
  }
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--precision-bits", cfg.precision_bits, "significand width in bits")
      ->envname("DOPLAB_PRECISION_BITS")
      ->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", cfg.out_path, "output file (default: standard output)");
}

void add_verify_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--beta-max", cfg.beta_max, "check |beta| <= B")->capture_default_str();
  sub->add_option("--tolerance", cfg.tolerance_text, "identity tolerance (default 2^(-bits/2))");
  sub->add_option("--gamma-max", cfg.gamma_max, "truncation override for convolution sums");
  sub->add_option("--perturb-lead", cfg.perturb_lead_text, "test hook: relative perturbation of p_lead")->group("");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Discrete analogue of d^2m/dx^2m + 2w^2 d^(2m-2)/dx^(2m-2) + w^4 d^(2m-4)/dx^(2m-4)"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "tabulate D_m(h beta) for beta = 0..beta-max");
  add_operator_options(build, cfg, true);
  add_common_options(build, cfg);
  build->add_option("--beta-max", cfg.beta_max, "last tabulated beta")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run every identity check for one (m, omega, N)");
  add_operator_options(verify, cfg, false);
  add_common_options(verify, cfg);
  add_verify_options(verify, cfg);
  verify->add_option("--from", cfg.from_path, "take m, omega, N and precision from a build artifact");

  auto* poly = app.add_subcommand("poly", "coefficients of the characteristic polynomial");
  add_operator_options(poly, cfg, true);
  add_common_options(poly, cfg);

  auto* euler = app.add_subcommand("euler", "exact Euler-Frobenius coefficients");
  euler->add_option("--k", cfg.k, "degree k >= 0")->required();
  euler->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  euler->add_option("--out", cfg.out_path, "output file (default: standard output)");

  auto* sweep = app.add_subcommand("sweep", "verify every (m, omega, N) triple of a grid file");
  sweep->add_option("--grid", cfg.grid_path, "file with one 'm omega N' triple per line")->required();
  add_common_options(sweep, cfg);
  add_verify_options(sweep, cfg);

  std::vector<std::string> argv_store{"doplab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (build->parsed()) return cmd_build(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (poly->parsed()) return cmd_poly(cfg, out);
    if (euler->parsed()) return cmd_euler(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DegenerateError& e) {
    err << "numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  }
  return kUsageError;
}

}  // namespace doplab::cli
