#pragma once

// Propagator of the trapped Calogero system in closed form:
//   K_N(x,y;t) = exp(i cot (x^2+y^2)/2) / [sqrt(2 pi i s)]^N  Psi_N(x; -y/s),
// s = sin(omega t)/omega, cot = omega cos(omega t)/sin(omega t) (s = t, cot = 1/t at omega = 0).

#include <memory>
#include <span>
#include <vector>

#include "calogero/coefficients.hpp"
#include "calogero/wavefunction.hpp"

namespace calogero {

/// |sin(omega t)| below this is treated as a caustic.
inline constexpr double kCausticGuard = 1e-9;

/// Time-dependent coefficients of the Mehler kernel, restricted to the first caustic window
/// 0 < |omega t| < pi.
struct TimeChart {
  double t = 0.0;
  double omega = 0.0;
  double s = 0.0;    // sin(omega t)/omega, or t
  double cot = 0.0;  // omega cos(omega t)/sin(omega t), or 1/t
  Complex root;      // principal sqrt(2 pi i s)

  /// Throws CausticError at t = 0 or |sin(omega t)| < kCausticGuard,
  /// DomainError outside the first caustic window.
  static TimeChart make(double t, double omega);
};

/// Single-particle harmonic kernel K_1(x,y;t).
Complex mehler(double x, double y, double t, double omega);
Complex mehler(Complex x, Complex y, const TimeChart& chart);

/// p = -y/s.
std::vector<double> effective_momentum(std::span<const double> y, double t, double omega);

/// K_N through the eigenfunction route, for fixed (N, l, omega) and table.
class Propagator {
 public:
  explicit Propagator(ModelParams params, std::shared_ptr<const CoefficientTable> table = nullptr);

  const ModelParams& params() const noexcept { return wavefunction_.params(); }
  const Wavefunction& wavefunction() const noexcept { return wavefunction_; }

  Complex operator()(std::span<const double> x, std::span<const double> y, double t,
                     EvalDiagnostics* diag = nullptr) const;
  Complex operator()(std::span<const double> x, std::span<const double> y, const TimeChart& chart,
                     EvalDiagnostics* diag = nullptr) const;
  /// Analytic continuation in x and y (used on rotated integration contours).
  Complex operator()(std::span<const Complex> x, std::span<const Complex> y, const TimeChart& chart,
                     EvalDiagnostics* diag = nullptr) const;

 private:
  Wavefunction wavefunction_;
};

/// Convenience wrapper around Propagator.
Complex kernel(std::span<const double> x, std::span<const double> y, double t, const ModelParams& params,
               EvalDiagnostics* diag = nullptr);

/// (1/N!) sum_sigma eps_sigma prod_i K_1(x_sigma(i), y_i): the l = 0 kernel.
Complex kernel_l0(std::span<const double> x, std::span<const double> y, double t, double omega);
Complex kernel_l0(std::span<const Complex> x, std::span<const Complex> y, const TimeChart& chart);

/// Fully explicit double sum over permutations and Laurent indices:
///   (1/N!) sum_sigma eps^{l+1} prod_i K_1(x_sigma(i), y_i)
///     sum_m C(m) prod_{i<j} (-i s / ((x_sigma(i) - x_sigma(j))(y_i - y_j)))^{m_ij}.
/// A ProductOfF table is expanded first. Throws SingularityError at coincident x or y when l > 0.
Complex kernel_explicit(std::span<const double> x, std::span<const double> y, double t, const ModelParams& params,
                        const CoefficientTable& table);

/// Free kernel with the same exchange statistics:
///   (1/N!) sum_sigma eps^{l+1} prod_i exp(i (x_sigma(i) - y_i)^2 / 2t) / sqrt(2 pi i t).
/// Throws DomainError at t = 0.
Complex free_kernel(std::span<const double> x, std::span<const double> y, double t, const ModelParams& params);

}  // namespace calogero
