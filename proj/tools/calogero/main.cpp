// calogero: kernels, eigenfunctions, figure grids, verification suites, coefficient solves and
// packet evolution from the command line.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calogero/checks.hpp"
#include "calogero/errors.hpp"
#include "calogero/evolution.hpp"
#include "calogero/oracle.hpp"
#include "calogero/propagator.hpp"
#include "cli_support.hpp"

namespace {

using namespace calogero;
using cli::format_double;
using json = nlohmann::ordered_json;

constexpr int kExitFail = 1;   // verify: some check failed
constexpr int kExitUsage = 2;  // bad arguments
constexpr int kExitError = 3;  // computation refused (caustic, rank deficiency, ...)

struct Args {
  int n = 0;
  int ell = -1;  // -1: not given
  std::string omega, t, x, y, p, bounds, suite, table = "closed-form", out;
  std::string centers, widths, momenta, exchange, route = "general", repr = "product";
  int res = 0;
  int samples = 0;
  std::uint64_t seed = 0x5eed2024ULL;
};

int ell_or(const Args& a, int fallback) { return a.ell < 0 ? fallback : a.ell; }

/// Numeric flag value, or `fallback` when the flag was not given.
double number_or(const std::string& text, double fallback) {
  return text.empty() ? fallback : cli::parse_number(text);
}

std::vector<double> list_or(const std::string& text, std::vector<double> fallback) {
  return text.empty() ? fallback : cli::parse_list(text);
}

void require_length(const std::vector<double>& v, int n, const char* flag) {
  if (static_cast<int>(v.size()) != n)
    throw DomainError(std::string(flag) + " needs " + std::to_string(n) + " components, got " + std::to_string(v.size()));
}

std::shared_ptr<const CoefficientTable> table_source(const std::string& source, const ModelParams& params) {
  if (source.empty() || source == "closed-form") {
    auto table = closed_form_laurent_table(params.n(), params.ell());
    if (!table)
      throw DomainError("no closed-form table for N=" + std::to_string(params.n()) + ", l=" +
                        std::to_string(params.ell()) + "; use --table oracle or a table file");
    return table;
  }
  if (source == "conjecture") {
    if (params.ell() != 1) throw DomainError("--table conjecture requires l=1");
    return std::make_shared<const CoefficientTable>(ell1_conjecture_table(params.n()));
  }
  if (source == "oracle") return std::make_shared<const CoefficientTable>(solve_coefficients(params).laurent);
  auto table = std::make_shared<const CoefficientTable>(load_table(source));
  if (table->n() != params.n() || table->ell() != params.ell())
    throw DomainError("table file is for N=" + std::to_string(table->n()) + ", l=" + std::to_string(table->ell()));
  return table;
}

/// Output stream: the --out file, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_stdout() const { return !file_.is_open(); }

 private:
  std::ofstream file_;
};

json point_report(Complex v, const EvalDiagnostics& diag) {
  json j;
  j["re"] = v.real();
  j["im"] = v.imag();
  j["abs"] = std::abs(v);
  j["min_pair_scale"] = diag.min_pair_scale;
  j["accuracy_warning"] = diag.accuracy_warning;
  return j;
}

int cmd_psi(const Args& a) {
  const ModelParams params(a.n == 0 ? 2 : a.n, ell_or(a, 1), 0.0);
  const auto x = cli::parse_list(a.x);
  const auto p = cli::parse_list(a.p);
  require_length(x, params.n(), "--x");
  require_length(p, params.n(), "--p");
  const Wavefunction wf(params, table_source(a.table, params));
  EvalDiagnostics diag;
  const Complex v = wf(x, p, &diag);
  Sink sink(a.out);
  sink.stream() << point_report(v, diag).dump() << "\n";
  return 0;
}

int cmd_kernel(const Args& a) {
  const ModelParams params(a.n == 0 ? 2 : a.n, ell_or(a, 1), number_or(a.omega, 1.0));
  const auto x = cli::parse_list(a.x);
  const auto y = cli::parse_list(a.y);
  require_length(x, params.n(), "--x");
  require_length(y, params.n(), "--y");
  const auto chart = TimeChart::make(cli::parse_number(a.t), params.omega());
  const Propagator prop(params, table_source(a.table, params));
  EvalDiagnostics diag;
  const Complex v = prop(x, y, chart, &diag);
  Sink sink(a.out);
  sink.stream() << point_report(v, diag).dump() << "\n";
  return 0;
}

int cmd_grid(const Args& a) {
  const int n = a.n == 0 ? 3 : a.n;
  if (n != 3) throw DomainError("grid uses the N=3 plane x1+x2+x3=0; got N=" + std::to_string(n));
  const ModelParams params(3, ell_or(a, 2), number_or(a.omega, 1.0));
  const double t = number_or(a.t, std::numbers::pi / 16);
  const auto y = list_or(a.y, {-1.0, 0.0, 1.0});
  require_length(y, 3, "--y");
  const auto b = list_or(a.bounds, {-4.0, 4.0, -4.0, 4.0});
  if (b.size() != 4) throw DomainError("--bounds needs umin,umax,vmin,vmax");
  const int res = a.res == 0 ? 256 : a.res;
  TimeChart::make(t, params.omega());  // caustic check before any work
  const std::string prefix = a.out.empty() ? "kernel_grid" : a.out;

  const auto field = figure_field(params, y, t, b[0], b[1], b[2], b[3], res, table_source(a.table, params));

  std::ofstream csv(prefix + ".csv", std::ios::binary);
  if (!csv) throw Error("cannot write '" + prefix + ".csv'");
  csv << "u,v,re,im,abs\n";
  std::vector<double> re, im, ab;
  for (int row = 0; row < res; ++row) {
    for (int col = 0; col < res; ++col) {
      const Complex k = field.values[static_cast<std::size_t>(row) * res + col];
      csv << format_double(field.u[col]) << ',' << format_double(field.v[row]) << ',' << format_double(k.real())
          << ',' << format_double(k.imag()) << ',' << format_double(std::abs(k)) << '\n';
    }
  }
  // Images put v_max on the top row.
  for (int row = res - 1; row >= 0; --row) {
    for (int col = 0; col < res; ++col) {
      const Complex k = field.values[static_cast<std::size_t>(row) * res + col];
      re.push_back(k.real());
      im.push_back(k.imag());
      ab.push_back(std::abs(k));
    }
  }
  std::ofstream meta(prefix + "_meta.txt", std::ios::binary);
  if (!meta) throw Error("cannot write '" + prefix + "_meta.txt'");
  meta << "N=3 l=" << params.ell() << " omega=" << format_double(params.omega()) << " t=" << format_double(t)
       << " y=" << format_double(y[0]) << ',' << format_double(y[1]) << ',' << format_double(y[2]) << '\n';
  meta << "u=[" << format_double(b[0]) << ',' << format_double(b[1]) << "] v=[" << format_double(b[2]) << ','
       << format_double(b[3]) << "] res=" << res << " accuracy_warning=" << (field.accuracy_warning ? 1 : 0) << '\n';
  for (const auto& [name, data] : {std::pair<const char*, std::vector<double>*>{"re", &re}, {"im", &im}, {"abs", &ab}}) {
    const auto [lo, hi] = std::minmax_element(data->begin(), data->end());
    cli::write_pgm(prefix + "_" + name + ".pgm", res, res, *data, *lo, *hi);
    meta << name << " min=" << format_double(*lo) << " max=" << format_double(*hi) << '\n';
  }
  std::cout << "wrote " << prefix << ".csv, " << prefix << "_{re,im,abs}.pgm, " << prefix << "_meta.txt\n";
  return 0;
}

json result_json(const CheckResult& r) {
  json j;
  j["name"] = r.name;
  j["suite"] = r.suite;
  j["passed"] = r.passed;
  j["measured"] = r.measured;
  j["threshold"] = r.threshold;
  j["detail"] = r.detail;
  j["seconds"] = r.seconds;
  return j;
}

int cmd_verify(const Args& a) {
  SuiteConfig config;
  config.n = a.n == 0 ? 2 : a.n;
  config.ell = ell_or(a, 1);
  config.omega = number_or(a.omega, 1.0);
  config.seed = a.seed;
  config.samples = a.samples;
  ModelParams(config.n, config.ell, config.omega);  // validation only

  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = suite_names();
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end())
      throw DomainError("unknown suite '" + a.suite + "'");
    suites.push_back(a.suite);
  }

  json report;
  report["N"] = config.n;
  report["ell"] = config.ell;
  report["omega"] = config.omega;
  report["seed"] = config.seed;
  auto results = json::array();
  bool all_passed = true;
  for (const auto& suite : suites) {
    try {
      const auto r = run_suite(suite, config);
      all_passed = all_passed && r.passed;
      results.push_back(result_json(r));
    } catch (const DomainError& e) {
      // With "all", suites that do not apply to this (N, l) are skipped, not failed.
      if (a.suite != "all") throw;
      json j;
      j["suite"] = suite;
      j["skipped"] = e.what();
      results.push_back(j);
    }
  }
  report["results"] = results;
  report["passed"] = all_passed;
  Sink sink(a.out);
  sink.stream() << report.dump(1) << "\n";
  return all_passed ? 0 : kExitFail;
}

int cmd_solve(const Args& a) {
  const ModelParams params(a.n == 0 ? 3 : a.n, ell_or(a, 1));
  if (a.repr != "product" && a.repr != "laurent") throw DomainError("--repr must be product or laurent");
  multi_index_count(params.n(), params.ell());  // size guard before any work
  SolveOptions opts;
  opts.seed = a.seed;
  try {
    const auto report = solve_coefficients(params, opts);
    Sink sink(a.out);
    sink.stream() << to_json(a.repr == "product" ? report.product : report.laurent);
    std::cerr << "solved N=" << params.n() << " l=" << params.ell() << ": " << report.unknowns << " unknowns, "
              << report.rows << " rows, " << report.method << ", " << format_double(report.seconds) << " s\n";
    return 0;
  } catch (const DegenerateSamplingError& e) {
    json j;
    j["N"] = params.n();
    j["ell"] = params.ell();
    j["status"] = "rank-deficient";
    j["detail"] = e.what();
    Sink sink(a.out);
    sink.stream() << j.dump(1) << "\n";
    throw;
  }
}

int cmd_evolve(const Args& a) {
  const int n = a.n == 0 ? 2 : a.n;
  const int ell = ell_or(a, 1);
  const ModelParams params(n, ell, number_or(a.omega, 1.0));
  const double t = number_or(a.t, 0.3);
  const auto centers = list_or(a.centers, n == 2 ? std::vector<double>{-1.5, 1.5} : std::vector<double>{});
  require_length(centers, n, "--centers");
  auto widths = list_or(a.widths, {0.6});
  if (widths.size() == 1) widths.assign(static_cast<std::size_t>(n), widths[0]);
  auto momenta = list_or(a.momenta, {0.0});
  if (momenta.size() == 1) momenta.assign(static_cast<std::size_t>(n), momenta[0]);
  require_length(widths, n, "--widths");
  require_length(momenta, n, "--momenta");
  const Exchange exchange = a.exchange.empty() ? statistics(ell) : parse_exchange(a.exchange);
  const auto packet = WavePacket::gaussian(centers, widths, momenta, exchange);
  packet.validate();
  const auto b = list_or(a.bounds, {-6.0, 6.0});
  if (b.size() != 2) throw DomainError("--bounds needs lo,hi for the output grid");
  const int res = a.res == 0 ? 96 : a.res;
  QuadratureGrid xgrid{std::vector<double>(static_cast<std::size_t>(n), b[0]),
                       std::vector<double>(static_cast<std::size_t>(n), b[1]),
                       std::vector<int>(static_cast<std::size_t>(n), res)};
  xgrid.validate();
  EvolveOptions opts;
  if (a.route == "l0") {
    opts.route = KernelRoute::L0;
  } else if (a.route != "general") {
    throw DomainError("--route must be general or l0");
  }
  TimeChart::make(t, params.omega());

  const auto report = evolve_norm(packet, t, params, xgrid, opts);
  Sink sink(a.out);
  auto& os = sink.stream();
  for (int i = 0; i < n; ++i) os << 'x' << (i + 1) << ',';
  os << "re,im,abs2,weight\n";
  for (std::size_t k = 0; k < report.samples.points.size(); ++k) {
    for (double xi : report.samples.points[k]) os << format_double(xi) << ',';
    const Complex v = report.evolution.values[k];
    os << format_double(v.real()) << ',' << format_double(v.imag()) << ',' << format_double(std::norm(v)) << ','
       << format_double(report.samples.weights[k]) << '\n';
  }
  auto& summary = sink.to_stdout() ? std::cerr : std::cout;
  summary << "norm_initial=" << format_double(report.norm_initial) << " norm_final=" << format_double(report.norm_final)
          << " drift=" << format_double(report.drift) << " error_estimate="
          << format_double(report.evolution.error_estimate) << " method=" << to_string(report.evolution.method)
          << " route=" << a.route << '\n';
  for (const auto& w : report.evolution.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calogero N-body kernels, eigenfunctions and coefficient tables"};
  app.require_subcommand(1);
  Args a;

  const auto common = [&](CLI::App* sub, bool model) {
    if (model) {
      sub->add_option("--N", a.n, "particle number");
      sub->add_option("--ell", a.ell, "integer coupling l");
    }
    sub->add_option("--out", a.out, "output path");
  };
  const auto numbers = [&](CLI::App* sub) {
    sub->add_option("--omega", a.omega, "trap frequency (decimal or pi/k)");
    sub->add_option("--t", a.t, "time (decimal or pi/k)");
  };

  auto* psi_cmd = app.add_subcommand("psi", "single-point eigenfunction Psi_N(x;p)");
  common(psi_cmd, true);
  psi_cmd->add_option("--x", a.x, "positions, comma-separated")->required();
  psi_cmd->add_option("--p", a.p, "momenta, comma-separated")->required();
  psi_cmd->add_option("--table", a.table, "closed-form | conjecture | oracle | table file");

  auto* kernel_cmd = app.add_subcommand("kernel", "single-point propagator K_N(x,y;t)");
  common(kernel_cmd, true);
  numbers(kernel_cmd);
  kernel_cmd->add_option("--x", a.x, "positions, comma-separated")->required();
  kernel_cmd->add_option("--y", a.y, "initial positions, comma-separated")->required();
  kernel_cmd->get_option("--t")->required();
  kernel_cmd->add_option("--table", a.table, "closed-form | conjecture | oracle | table file");

  auto* grid_cmd = app.add_subcommand("grid", "N=3 kernel on the plane x1+x2+x3=0 (CSV + PGM)");
  common(grid_cmd, true);
  numbers(grid_cmd);
  grid_cmd->add_option("--y", a.y, "initial positions (default -1,0,1)");
  grid_cmd->add_option("--bounds", a.bounds, "umin,umax,vmin,vmax (default -4,4,-4,4)");
  grid_cmd->add_option("--res", a.res, "points per axis (default 256)");
  grid_cmd->add_option("--table", a.table, "closed-form | conjecture | oracle | table file");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite, JSON report");
  common(verify_cmd, true);
  verify_cmd->add_option("--omega", a.omega, "trap frequency (decimal or pi/k)");
  verify_cmd->add_option("--suite", a.suite, "suite name or 'all'")->required();
  verify_cmd->add_option("--seed", a.seed, "sampling seed");
  verify_cmd->add_option("--samples", a.samples, "sample count override");

  auto* solve_cmd = app.add_subcommand("solve", "exact coefficient table by rational linear solve");
  common(solve_cmd, true);
  solve_cmd->add_option("--seed", a.seed, "sampling seed");
  solve_cmd->add_option("--repr", a.repr, "product | laurent (default product)");

  auto* evolve_cmd = app.add_subcommand("evolve", "evolve a Gaussian packet (N <= 3), CSV + norm drift");
  common(evolve_cmd, true);
  numbers(evolve_cmd);
  evolve_cmd->add_option("--centers", a.centers, "packet centres (default -1.5,1.5)");
  evolve_cmd->add_option("--widths", a.widths, "packet widths (default 0.6)");
  evolve_cmd->add_option("--momenta", a.momenta, "packet momenta (default 0)");
  evolve_cmd->add_option("--exchange", a.exchange, "none | symmetric | antisymmetric (default: statistics of l)");
  evolve_cmd->add_option("--bounds", a.bounds, "output grid lo,hi per axis (default -6,6)");
  evolve_cmd->add_option("--res", a.res, "output nodes per axis (default 96)");
  evolve_cmd->add_option("--route", a.route, "general | l0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json j;
    j["error"] = "UsageError";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (*psi_cmd) return cmd_psi(a);
    if (*kernel_cmd) return cmd_kernel(a);
    if (*grid_cmd) return cmd_grid(a);
    if (*verify_cmd) return cmd_verify(a);
    if (*solve_cmd) return cmd_solve(a);
    if (*evolve_cmd) return cmd_evolve(a);
  } catch (const std::exception& e) {
    std::cerr << cli::error_line(e) << "\n";
    return dynamic_cast<const DomainError*>(&e) ? kExitUsage : kExitError;
  }
  return kExitUsage;
}
