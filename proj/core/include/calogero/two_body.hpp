#pragma once

// Two-body Laurent polynomials F_k(X) = sum_{a=k}^{l} (l+a)!/((l-a)!(a-k)!) X^{-a}
// and the spherical Bessel functions they resum for N = 2.

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "calogero/foundation.hpp"

namespace calogero {

using Complex = std::complex<double>;

/// Largest coupling accepted anywhere in the library.
inline constexpr int kMaxEll = 20;

/// Exact and floating coefficients of F_0..F_l for one coupling l.
/// Instances are immutable; obtain shared copies through `get`.
class TwoBodyPolynomials {
 public:
  explicit TwoBodyPolynomials(int ell);

  /// Shared instance for `ell`, built on first use.
  static std::shared_ptr<const TwoBodyPolynomials> get(int ell);

  int ell() const noexcept { return ell_; }

  /// Coefficient of X^{-a} in F_k; zero for a < k.
  const BigRational& exact(int k, int a) const;
  double coefficient(int k, int a) const;

  /// F_k(X). Throws SingularityError at X = 0.
  Complex evaluate(int k, Complex x) const;
  /// F_0(X),...,F_l(X) into `out` (size l+1).
  void evaluate_all(Complex x, std::span<Complex> out) const;

 private:
  std::size_t index(int k, int a) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(ell_ + 1) + static_cast<std::size_t>(a);
  }

  int ell_;
  std::vector<BigRational> exact_;
  std::vector<double> value_;
};

/// F_k(X) for coupling `ell`. Throws DomainError unless 0 <= k <= ell,
/// SingularityError at X = 0.
Complex f_poly(int k, Complex x, int ell);

/// d^k/ds^k F_0(X/s) at s = 1, by term-wise differentiation of the exact
/// Laurent coefficients of F_0. Cross-check for f_poly.
Complex f_descendant_check(int k, Complex x, int ell);

/// Spherical Bessel function j_l(z) for integer order 0 <= l <= kMaxEll and real z:
/// finite trigonometric closed form away from the origin, power series near it.
double spherical_bessel_j(int ell, double z);

}  // namespace calogero
