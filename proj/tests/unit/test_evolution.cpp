#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"
#include "calogero/evolution.hpp"

using namespace calogero;
using Vec = std::vector<double>;

TEST_CASE("exchange parsing and statistics") {
  for (auto e : {Exchange::None, Exchange::Symmetric, Exchange::Antisymmetric}) CHECK(parse_exchange(to_string(e)) == e);
  CHECK(statistics(1) == Exchange::Symmetric);
  CHECK(statistics(2) == Exchange::Antisymmetric);
  CHECK_THROWS_AS(parse_exchange("fermi"), DomainError);
}

TEST_CASE("packet symmetrization") {
  const auto p = WavePacket::gaussian({-1.0, 1.0}, {0.5, 0.5}, {0.0, 0.0}, Exchange::Antisymmetric);
  CHECK(std::abs(packet_value(p, Vec{0.3, 0.3})) < 1e-15);
  CHECK(std::abs(packet_value(p, Vec{0.2, -0.7}) + packet_value(p, Vec{-0.7, 0.2})) < 1e-15);
  const auto q = WavePacket::gaussian({-1.0, 1.0}, {0.5, 0.5}, {0.0, 0.0}, Exchange::Symmetric);
  CHECK(std::abs(packet_value(q, Vec{0.2, -0.7}) - packet_value(q, Vec{-0.7, 0.2})) < 1e-15);
  CHECK_THROWS_AS(WavePacket::gaussian({0.0}, {0.0}, {0.0}, Exchange::None).validate(), DomainError);
}

TEST_CASE("free single-particle Gaussian spreads as predicted") {
  // |psi(x,t)|^2 for a unit-width Gaussian at rest: width^2 grows to 1 + t^2.
  const ModelParams params(1, 0, 0.0);
  const auto packet = WavePacket::gaussian({0.0}, {1.0}, {0.0}, Exchange::None);
  const double t = 0.7;
  const auto r = evolve(packet, t, params, {{0.0}, {1.0}});
  const double w2 = 1.0 + t * t;
  const double ratio = std::norm(r.values[1]) / std::norm(r.values[0]);
  CHECK(ratio == Catch::Approx(std::exp(-1.0 / w2)).epsilon(1e-8));
  CHECK(std::norm(r.values[0]) == Catch::Approx(1.0 / std::sqrt(w2)).epsilon(1e-8));
}

TEST_CASE("a displaced ground-width packet reaches the origin after a quarter period") {
  const ModelParams params(1, 0, 1.0);
  const auto packet = WavePacket::gaussian({1.0}, {1.0}, {0.0}, Exchange::None);
  const auto quarter = evolve(packet, 0.5 * std::numbers::pi, params, {{0.0}, {1.0}});
  // at a quarter period the ground-width packet sits at the origin with momentum -1
  CHECK(std::norm(quarter.values[0]) > std::norm(quarter.values[1]));
}

TEST_CASE("tensor and separated integrations agree") {
  const ModelParams params(2, 1, 1.0);
  const auto packet = WavePacket::gaussian({-1.5, 1.5}, {0.6, 0.6}, {0.0, 0.0}, Exchange::Symmetric);
  const std::vector<Vec> out{{-1.2, 1.4}, {0.3, 1.9}};
  EvolveOptions tensor;
  tensor.method = IntegrationMethod::Tensor;
  EvolveOptions separated;
  separated.method = IntegrationMethod::Separated;
  const auto a = evolve(packet, 0.3, params, out, tensor);
  const auto b = evolve(packet, 0.3, params, out, separated);
  CHECK(b.method == IntegrationMethod::Separated);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-7);
  CHECK(resolve_method(packet, params, IntegrationMethod::Auto) == IntegrationMethod::Separated);
}

TEST_CASE("evolution guards") {
  const auto packet = WavePacket::gaussian({-1.0, 0.0, 1.0, 2.0}, {1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0},
                                           Exchange::None);
  CHECK_THROWS_AS(evolve(packet, 0.3, ModelParams(4, 0, 1.0), {{0.0, 0.0, 0.0, 0.0}}), SizeLimitError);
  const auto two = WavePacket::gaussian({-1.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}, Exchange::None);
  CHECK_THROWS_AS(evolve(two, 0.0, ModelParams(2, 0, 1.0), {{0.0, 0.0}}), CausticError);
  CHECK_THROWS_AS(evolve(two, 0.3, ModelParams(3, 0, 1.0), {{0.0, 0.0}}), DomainError);
}

TEST_CASE("weighted norm") {
  const std::vector<Complex> v{{3.0, 4.0}, {1.0, 0.0}};
  const Vec w{0.5, 2.0};
  CHECK(weighted_norm(v, w) == 14.5);
  const auto s = grid_samples(QuadratureGrid{{-1.0}, {1.0}, {8}});
  CHECK(s.points.size() == 8);
}
