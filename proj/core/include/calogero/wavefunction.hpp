#pragma once

// Scattering eigenfunctions of the trap-free Calogero Hamiltonian
//   Psi_N(x;p) = (1/N!) sum_sigma eps_sigma^{l+1} F_N(x_sigma;p) exp(i p.x_sigma),
// with F_N built from the pair variables X_ij = -i (p_i - p_j)(x_i - x_j).

#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "calogero/coefficients.hpp"
#include "calogero/two_body.hpp"

namespace calogero {

/// Particle number N, integer coupling l >= 0 and trap frequency omega >= 0.
/// Builds the F_k coefficient cache for l on construction.
class ModelParams {
 public:
  ModelParams(int n, int ell, double omega = 0.0);

  int n() const noexcept { return n_; }
  int ell() const noexcept { return ell_; }
  double omega() const noexcept { return omega_; }
  const TwoBodyPolynomials& polynomials() const noexcept { return *polynomials_; }

  /// eps_sigma^{l+1}: the exchange sign of a permutation with sign `sign`.
  int exchange_sign(int sign) const noexcept { return (ell_ % 2 == 1) ? 1 : sign; }

 private:
  int n_;
  int ell_;
  double omega_;
  std::shared_ptr<const TwoBodyPolynomials> polynomials_;
};

/// |x_i - x_j| |p_i - p_j| below this marks a pair evaluation as cancellation-prone.
inline constexpr double kMinPairSeparation = 1e-8;

struct EvalDiagnostics {
  double min_pair_scale = std::numeric_limits<double>::infinity();
  bool accuracy_warning = false;
  /// Some pair had exactly coincident positions or momenta; the value returned is 0.
  bool coincident = false;
};

/// X_ij = -i (p_i - p_j)(x_i - x_j).
Complex pair_variable(std::span<const double> x, std::span<const double> p, PairIndex pair);
Complex pair_variable(std::span<const Complex> x, std::span<const Complex> p, PairIndex pair);

/// Floating evaluator of F_N from an exact table (either representation).
class CorrelationFactor {
 public:
  explicit CorrelationFactor(const CoefficientTable& table);

  int n() const noexcept { return n_; }
  int ell() const noexcept { return ell_; }
  Representation representation() const noexcept { return representation_; }

  /// F_N given the N(N-1)/2 pair variables in canonical order. Throws SingularityError
  /// if a pair variable is zero and l > 0.
  Complex evaluate(std::span<const Complex> pair_vars) const;

 private:
  int n_;
  int ell_;
  int slots_;
  Representation representation_;
  std::vector<std::uint8_t> exponents_;  // terms x slots
  std::vector<double> values_;
  std::shared_ptr<const TwoBodyPolynomials> polynomials_;
};

/// Psi_N for fixed (params, table). Thread-safe and cheap to copy.
class Wavefunction {
 public:
  /// `table` null selects closed_form_laurent_table(N, l); throws DomainError if none exists.
  explicit Wavefunction(ModelParams params, std::shared_ptr<const CoefficientTable> table = nullptr);

  const ModelParams& params() const noexcept { return params_; }
  const CoefficientTable& table() const noexcept { return *table_; }
  std::shared_ptr<const CoefficientTable> table_ptr() const noexcept { return table_; }

  /// Psi_N(x;p). Exactly coincident positions or momenta return 0 (the function vanishes there);
  /// near-coincidence sets diag->accuracy_warning.
  Complex operator()(std::span<const double> x, std::span<const double> p, EvalDiagnostics* diag = nullptr) const;
  Complex operator()(std::span<const Complex> x, std::span<const Complex> p, EvalDiagnostics* diag = nullptr) const;

  /// F_N(x;p) without symmetrization. Throws SingularityError at coincidence.
  Complex correlation(std::span<const double> x, std::span<const double> p) const;
  Complex correlation(std::span<const Complex> x, std::span<const Complex> p) const;

 private:
  ModelParams params_;
  std::shared_ptr<const CoefficientTable> table_;
  std::shared_ptr<const CorrelationFactor> factor_;
};

/// Convenience wrappers; prefer a Wavefunction instance inside loops.
Complex script_f(std::span<const double> x, std::span<const double> p, const ModelParams& params,
                 const CoefficientTable& table);
Complex psi(std::span<const double> x, std::span<const double> p, const ModelParams& params,
            EvalDiagnostics* diag = nullptr);

/// Two-body eigenfunction through spherical Bessel functions:
///   exp(i (x1+x2)(p1+p2)/2) i^{l+1} z j_l(z),   z = (p1-p2)(x1-x2)/2.
/// The phase i^{l+1} matches the permutation-sum normalization (F_N -> 1 plane waves);
/// the (-i)^{l+1} prefactor differs from it by (-1)^{l+1}.
Complex psi2_bessel(std::span<const double> x, std::span<const double> p, int ell);

/// prod_{i<j} (x_i - x_j).
double vandermonde(std::span<const double> x);

}  // namespace calogero
