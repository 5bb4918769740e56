#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "calogero/errors.hpp"
#include "calogero/wavefunction.hpp"

using namespace calogero;

namespace {

using Vec = std::vector<double>;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Distinct, well separated coordinates.
Vec spaced(int n, std::mt19937_64& rng, double lo = -3.0, double gap = 1.0) {
  std::uniform_real_distribution<double> jitter(0.0, 0.4);
  Vec v;
  double at = lo;
  for (int i = 0; i < n; ++i) {
    at += gap + jitter(rng);
    v.push_back(at);
  }
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace

TEST_CASE("l = 0 is the (anti)symmetrized plane wave") {
  std::mt19937_64 rng(1);
  const Wavefunction wf(ModelParams(3, 0));
  for (int k = 0; k < 10; ++k) {
    const auto x = spaced(3, rng), p = spaced(3, rng);
    Complex det = 0.0;
    for (const auto& s : permutations(3)) {
      double phase = 0.0;
      for (int i = 0; i < 3; ++i) phase += p[i] * x[s[i]];
      det += static_cast<double>(s.sign()) * std::polar(1.0, phase);
    }
    CHECK(rel(wf(x, p), det / 6.0) < 1e-13);
  }
}

TEST_CASE("exchange symmetry follows l") {
  std::mt19937_64 rng(2);
  for (int ell : {1, 2, 3}) {
    const Wavefunction wf(ModelParams(3, ell));
    const auto x = spaced(3, rng, -3.0, 2.0), p = spaced(3, rng, -3.0, 2.0);
    const Vec swapped{x[1], x[0], x[2]};
    const double sign = ell % 2 == 1 ? 1.0 : -1.0;
    CHECK(rel(wf(swapped, p), sign * wf(x, p)) < 1e-12);
    // momenta and coordinates play symmetric roles
    CHECK(rel(wf(p, x), wf(x, p)) < 1e-12);
  }
}

TEST_CASE("translation multiplies by a phase") {
  std::mt19937_64 rng(3);
  const Wavefunction wf(ModelParams(3, 2));
  const auto x = spaced(3, rng, -3.0, 2.0), p = spaced(3, rng, -3.0, 2.0);
  const double a = 0.37;
  Vec shifted = x;
  for (auto& v : shifted) v += a;
  const double total = p[0] + p[1] + p[2];
  CHECK(rel(wf(shifted, p), std::polar(1.0, a * total) * wf(x, p)) < 1e-12);
}

TEST_CASE("two-body form matches the Bessel resummation") {
  std::mt19937_64 rng(4);
  for (int ell = 0; ell <= 6; ++ell) {
    const Wavefunction wf(ModelParams(2, ell));
    const Vec x{-1.1, 1.6}, p{2.0 + ell, -1.0 - ell};
    CHECK(rel(wf(x, p), psi2_bessel(x, p, ell)) < 1e-10);
  }
}

TEST_CASE("coincident arguments") {
  const Wavefunction wf(ModelParams(2, 1));
  EvalDiagnostics diag;
  CHECK(wf(Vec{0.5, 0.5}, Vec{1.0, -1.0}, &diag) == Complex(0.0, 0.0));
  CHECK(diag.coincident);
  CHECK_THROWS_AS(wf.correlation(Vec{0.5, 0.5}, Vec{1.0, -1.0}), SingularityError);
  EvalDiagnostics near;
  (void)wf(Vec{0.5, 0.5 + 1e-10}, Vec{1.0, -1.0}, &near);
  CHECK(near.accuracy_warning);
  CHECK_THROWS_AS(wf(Vec{0.5}, Vec{1.0, -1.0}), DomainError);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(ModelParams(2, -1), DomainError);
  CHECK_THROWS_AS(ModelParams(2, 1, -1.0), DomainError);
  CHECK_THROWS_AS(Wavefunction(ModelParams(4, 2)), DomainError);
}

TEST_CASE("Vandermonde") {
  CHECK(vandermonde(Vec{1.0, 2.0, 4.0}) == (1.0 - 2.0) * (1.0 - 4.0) * (2.0 - 4.0));
}
