#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"
#include "calogero/propagator.hpp"

using namespace calogero;
using Vec = std::vector<double>;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("time chart") {
  const auto c = TimeChart::make(0.3, 0.0);
  CHECK(c.s == 0.3);
  CHECK(c.cot == Catch::Approx(1.0 / 0.3));
  const auto h = TimeChart::make(0.3, 2.0);
  CHECK(h.s == Catch::Approx(std::sin(0.6) / 2.0));
  CHECK_THROWS_AS(TimeChart::make(0.0, 1.0), CausticError);
  CHECK_THROWS_AS(TimeChart::make(std::numbers::pi, 1.0), CausticError);
  CHECK_THROWS_AS(TimeChart::make(4.0, 1.0), DomainError);
  CHECK_THROWS_AS(TimeChart::make(0.5, -1.0), DomainError);
  try {
    (void)TimeChart::make(std::numbers::pi, 1.0);
  } catch (const CausticError& e) {
    CHECK(e.time() == std::numbers::pi);
  }
}

TEST_CASE("single-particle kernel reduces to the free one") {
  const Complex free = std::exp(Complex(0.0, 0.49 / 0.4)) / std::sqrt(Complex(0.0, 2.0 * std::numbers::pi * 0.2));
  CHECK(rel(mehler(0.3, -0.4, 0.2, 0.0), free) < 1e-14);
}

TEST_CASE("l = 0 kernel is the Mehler determinant") {
  const ModelParams params(3, 0, 1.0);
  const Vec x{-1.2, 0.4, 1.7}, y{-0.6, 0.9, 2.1};
  CHECK(rel(kernel(x, y, 0.4, params), kernel_l0(x, y, 0.4, 1.0)) < 1e-12);
}

TEST_CASE("kernel routes agree") {
  for (int ell = 1; ell <= 2; ++ell) {
    const ModelParams params(3, ell, 1.0);
    const Vec x{-1.9, 0.2, 2.3}, y{-2.2, 0.1, 1.9};
    const auto table = closed_form_laurent_table(3, ell);
    CHECK(rel(kernel_explicit(x, y, 0.3, params, *table), kernel(x, y, 0.3, params)) < 1e-10);
    CHECK(rel(kernel_explicit(x, y, 0.3, params, c3_table(ell)), kernel(x, y, 0.3, params)) < 1e-10);
  }
}

TEST_CASE("time reversal and reciprocity") {
  const Propagator prop(ModelParams(2, 1, 1.0));
  const Vec x{-1.1, 1.3}, y{-1.4, 0.9};
  CHECK(rel(prop(x, y, -0.4), std::conj(prop(x, y, 0.4))) < 1e-12);
  CHECK(rel(prop(y, x, 0.4), prop(x, y, 0.4)) < 1e-12);
}

TEST_CASE("effective momentum") {
  const auto p = effective_momentum(Vec{1.0, -2.0}, 0.5, 0.0);
  CHECK(p == Vec{-2.0, 4.0});
}

TEST_CASE("free kernel statistics") {
  const ModelParams fermi(2, 0, 0.0), bose(2, 1, 0.0);
  const Vec x{0.1, 0.1}, y{-0.3, 0.4};
  CHECK(std::abs(free_kernel(x, y, 0.2, fermi)) < 1e-15);
  CHECK(std::abs(free_kernel(x, y, 0.2, bose)) > 0.1);
  CHECK_THROWS_AS(free_kernel(x, y, 0.0, bose), DomainError);
}

TEST_CASE("explicit route needs distinct points") {
  const ModelParams params(2, 1, 1.0);
  CHECK_THROWS_AS(kernel_explicit(Vec{0.5, 0.5}, Vec{0.1, 0.2}, 0.3, params, c2_table(1)), SingularityError);
  CHECK_THROWS_AS(kernel(Vec{0.5}, Vec{0.1, 0.2}, 0.3, params), DomainError);
}
