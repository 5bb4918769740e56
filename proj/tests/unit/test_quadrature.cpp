#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"
#include "calogero/quadrature.hpp"

using namespace calogero;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n = 1; n <= 12; ++n) {
    const auto rule = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == Catch::Approx(2.0).epsilon(1e-14));
    for (int d = 0; d < 2 * n; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

TEST_CASE("composite rule on a Gaussian") {
  const auto rule = composite_gauss_legendre(-8.0, 8.0, 16, kPanelOrder);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  CHECK(s == Catch::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("midpoint rule") {
  const auto rule = midpoint_rule(0.0, 1.0, 4);
  CHECK(rule.nodes.front() == 0.125);
  CHECK(rule.weights.back() == 0.25);
}

TEST_CASE("grid validation") {
  QuadratureGrid g{{-1.0, -1.0}, {1.0, 1.0}, {10, 12}};
  REQUIRE_NOTHROW(g.validate());
  CHECK(g.axis_rule_size(0) == 16);
  CHECK(g.total_points() == 16 * 16);
  CHECK(g.rescaled(0.5).points[0] >= 1);
  QuadratureGrid bad{{1.0}, {-1.0}, {8}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  QuadratureGrid huge{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {400, 400, 400}};
  CHECK_THROWS_AS(huge.validate(), SizeLimitError);
  CHECK(parse_quadrature_rule(to_string(QuadratureRule::Midpoint)) == QuadratureRule::Midpoint);
}
