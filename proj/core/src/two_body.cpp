#include "calogero/two_body.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

void check_ell(int ell) {
  if (ell < 0 || ell > kMaxEll) {
    throw DomainError("coupling l=" + std::to_string(ell) + " outside 0.." + std::to_string(kMaxEll));
  }
}

}  // namespace

TwoBodyPolynomials::TwoBodyPolynomials(int ell) : ell_(ell) {
  check_ell(ell);
  const auto size = static_cast<std::size_t>((ell + 1) * (ell + 1));
  exact_.assign(size, BigRational(0));
  value_.assign(size, 0.0);
  for (int k = 0; k <= ell; ++k) {
    for (int a = k; a <= ell; ++a) {
      BigRational c = factorial_ratio(ell + a, ell - a) / BigRational(factorial(a - k));
      value_[index(k, a)] = c.get_d();
      exact_[index(k, a)] = std::move(c);
    }
  }
}

std::shared_ptr<const TwoBodyPolynomials> TwoBodyPolynomials::get(int ell) {
  check_ell(ell);
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const TwoBodyPolynomials>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[ell];
  if (!slot) slot = std::make_shared<const TwoBodyPolynomials>(ell);
  return slot;
}

const BigRational& TwoBodyPolynomials::exact(int k, int a) const {
  if (k < 0 || k > ell_ || a < 0 || a > ell_) throw DomainError("F_k coefficient index out of range");
  return exact_[index(k, a)];
}

double TwoBodyPolynomials::coefficient(int k, int a) const {
  if (k < 0 || k > ell_ || a < 0 || a > ell_) throw DomainError("F_k coefficient index out of range");
  return value_[index(k, a)];
}

Complex TwoBodyPolynomials::evaluate(int k, Complex x) const {
  if (k < 0 || k > ell_) throw DomainError("F_k: k outside 0..l");
  if (x == Complex(0.0)) throw SingularityError("F_k evaluated at X = 0");
  const Complex inv = 1.0 / x;
  // Horner in 1/X from the highest power down.
  Complex acc = 0.0;
  for (int a = ell_; a >= k; --a) acc = acc * inv + value_[index(k, a)];
  for (int a = 0; a < k; ++a) acc *= inv;
  return acc;
}

void TwoBodyPolynomials::evaluate_all(Complex x, std::span<Complex> out) const {
  if (out.size() != static_cast<std::size_t>(ell_ + 1)) throw DomainError("evaluate_all: wrong output size");
  if (x == Complex(0.0)) throw SingularityError("F_k evaluated at X = 0");
  const Complex inv = 1.0 / x;
  for (int k = 0; k <= ell_; ++k) {
    Complex acc = 0.0;
    for (int a = ell_; a >= k; --a) acc = acc * inv + value_[index(k, a)];
    for (int a = 0; a < k; ++a) acc *= inv;
    out[static_cast<std::size_t>(k)] = acc;
  }
}

Complex f_poly(int k, Complex x, int ell) {
  check_ell(ell);
  if (k < 0 || k > ell) throw DomainError("f_poly: k outside 0..l");
  return TwoBodyPolynomials::get(ell)->evaluate(k, x);
}

Complex f_descendant_check(int k, Complex x, int ell) {
  check_ell(ell);
  if (k < 0 || k > ell) throw DomainError("f_descendant_check: k outside 0..l");
  if (x == Complex(0.0)) throw SingularityError("F_k evaluated at X = 0");
  // F_0(X/s) = sum_a c_a s^a X^{-a}; d^k/ds^k s^a |_{s=1} = a!/(a-k)!.
  const Complex inv = 1.0 / x;
  Complex acc = 0.0;
  Complex power = 1.0;
  for (int a = 0; a <= ell; ++a) {
    if (a >= k) {
      const BigRational c0 = factorial_ratio(ell + a, ell - a) / BigRational(factorial(a));
      const BigRational c = c0 * factorial_ratio(a, a - k);
      acc += c.get_d() * power;
    }
    power *= inv;
  }
  return acc;
}

double spherical_bessel_j(int ell, double z) {
  check_ell(ell);
  const double az = std::abs(z);
  if (az < 0.5 + ell) {
    // j_l(z) = z^l / (2l+1)!! * sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
    double lead = 1.0;
    for (int m = 1; m <= ell; ++m) lead *= z / (2.0 * m + 1.0);
    double term = 1.0;
    double sum = 1.0;
    const double q = -0.5 * z * z;
    for (int k = 1; k < 200; ++k) {
      term *= q / (k * (2.0 * ell + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return lead * sum;
  }
  // j_l(z) = [sin(z - l pi/2) P(1/z) + cos(z - l pi/2) Q(1/z)] / z with
  // a_k = (l+k)! / (2^k k! (l-k)!).
  const double inv = 1.0 / z;
  double p = 0.0;
  double q = 0.0;
  for (int k = 0; k <= ell; ++k) {
    const double a = BigRational(factorial_ratio(ell + k, ell - k) / BigRational(factorial(k))).get_d() / std::ldexp(1.0, k);
    const double term = a * std::pow(inv, k);
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
  }
  const double phase = z - 0.5 * M_PI * ell;
  return (std::sin(phase) * p + std::cos(phase) * q) * inv;
}

}  // namespace calogero
