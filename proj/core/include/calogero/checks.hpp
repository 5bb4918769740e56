#pragma once

// Named verification suites shared by the command-line `verify` command and the test binaries.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "calogero/propagator.hpp"

namespace calogero {

struct CheckResult {
  std::string suite;
  std::string name;  // suite plus the parameters it ran with
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteConfig {
  int n = 2;
  int ell = 1;
  double omega = 1.0;
  std::uint64_t seed = 0x5eed2024ULL;
  /// Number of random sample points; 0 selects the suite default.
  int samples = 0;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws DomainError for an unknown name or parameters the suite does not
/// support (e.g. bessel-match with N != 2).
CheckResult run_suite(const std::string& suite, const SuiteConfig& config);

/// Kernel on the plane x1 + x2 + x3 = 0, sampled on a res x res grid of
///   u = (x1 - x2)/sqrt(2),  v = (x1 + x2 - 2 x3)/sqrt(6).
struct FigureField {
  int res = 0;
  double u_min = 0.0, u_max = 0.0, v_min = 0.0, v_max = 0.0;
  std::vector<double> u;  // per column
  std::vector<double> v;  // per row
  std::vector<Complex> values;  // row-major, values[row * res + col] at (u[col], v[row])
  bool accuracy_warning = false;
};

/// x on the plane from (u, v).
std::vector<double> plane_point(double u, double v);

/// `table` null selects the closed form.
FigureField figure_field(const ModelParams& params, const std::vector<double>& y, double t, double u_min,
                         double u_max, double v_min, double v_max, int res,
                         std::shared_ptr<const CoefficientTable> table = nullptr);

/// Largest |K| within half a cell of the coincidence lines u = 0 and v = +-u/sqrt(3),
/// divided by the field maximum.
double zero_line_ratio(const FigureField& field);

}  // namespace calogero
