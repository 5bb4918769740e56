#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "calogero/errors.hpp"
#include "calogero/two_body.hpp"

using namespace calogero;

TEST_CASE("F_k coefficients") {
  // F_0 for l = 2: 1 + 6/X + 12/X^2
  const TwoBodyPolynomials f(2);
  CHECK(f.exact(0, 0) == 1);
  CHECK(f.exact(0, 1) == 6);
  CHECK(f.exact(0, 2) == 12);
  CHECK(f.exact(2, 1) == 0);
  CHECK(f.exact(2, 2) == 24);
  CHECK(f.evaluate(0, Complex(2.0, 0.0)) == Complex(1.0 + 3.0 + 3.0, 0.0));
  CHECK_THROWS_AS(f.evaluate(0, Complex(0.0, 0.0)), SingularityError);
  CHECK_THROWS_AS(f_poly(3, Complex(1.0, 0.0), 2), DomainError);
}

TEST_CASE("F_k is the k-th scaling descendant of F_0") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int ell = 0; ell <= 6; ++ell) {
    for (int trial = 0; trial < 10; ++trial) {
      const Complex x(u(rng), u(rng));
      if (std::abs(x) < 0.5) continue;
      for (int k = 0; k <= ell; ++k) {
        const Complex a = f_poly(k, x, ell);
        const Complex b = f_descendant_check(k, x, ell);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("evaluate_all agrees with evaluate") {
  const auto f = TwoBodyPolynomials::get(4);
  std::vector<Complex> out(5);
  const Complex x(0.7, -1.3);
  f->evaluate_all(x, out);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(out[k] - f->evaluate(k, x)) < 1e-13 * std::abs(out[k]));
  CHECK(TwoBodyPolynomials::get(4) == f);
}

TEST_CASE("spherical Bessel closed forms") {
  CHECK(spherical_bessel_j(0, 1.3) == Catch::Approx(std::sin(1.3) / 1.3).epsilon(1e-15));
  const double z = 2.7;
  CHECK(spherical_bessel_j(1, z) == Catch::Approx(std::sin(z) / (z * z) - std::cos(z) / z).epsilon(1e-14));
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(3, 0.0) == 0.0);
  CHECK(spherical_bessel_j(2, -z) == Catch::Approx(spherical_bessel_j(2, z)).epsilon(1e-15));
  CHECK(spherical_bessel_j(3, -z) == Catch::Approx(-spherical_bessel_j(3, z)).epsilon(1e-15));
}

TEST_CASE("spherical Bessel recurrence") {
  // j_{l-1} + j_{l+1} = (2l+1)/z j_l, across the series/closed-form switch
  for (double z : {0.05, 0.3, 1.0, 4.0, 12.5, 40.0}) {
    for (int ell = 1; ell < 10; ++ell) {
      const double lhs = spherical_bessel_j(ell - 1, z) + spherical_bessel_j(ell + 1, z);
      const double rhs = (2 * ell + 1) / z * spherical_bessel_j(ell, z);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1e-30}) + 1e-300);
    }
  }
}
