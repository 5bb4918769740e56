#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "calogero/errors.hpp"
#include "calogero/oracle.hpp"

using namespace calogero;

TEST_CASE("closed-form tables have exactly zero residual") {
  std::mt19937_64 rng(5);
  for (int ell = 0; ell <= 4; ++ell) {
    const auto t = c3_table(ell);
    for (int k = 0; k < 3; ++k) CHECK(table_residual(t, random_sample(3, rng)).is_zero());
    CHECK(verify_table(*closed_form_laurent_table(2, ell), ModelParams(2, ell), 3).exact_zero());
  }
}

TEST_CASE("a perturbed table is rejected") {
  auto terms = std::map<MultiIndex, BigRational>{};
  const auto good = c3_table(2);
  for (const auto& term : good.terms()) terms[term.index] = term.value;
  terms[{1, 1, 1}] += make_rational(1, 1000);
  const CoefficientTable bad(3, 2, Representation::ProductOfF, TableStatus::Oracle, terms);
  CHECK_FALSE(verify_table(bad, ModelParams(3, 2), 3).exact_zero());
}

TEST_CASE("solver reproduces the three-body closed form") {
  for (int ell = 1; ell <= 2; ++ell) {
    const auto report = solve_coefficients(ModelParams(3, ell));
    CHECK(report.product == c3_table(ell));
    CHECK(report.product.status() == TableStatus::Oracle);
    CHECK(report.held_out_zero);
  }
}

TEST_CASE("solver is basis independent") {
  SolveOptions laurent;
  laurent.basis = Representation::LaurentMonomial;
  SolveOptions flat = laurent;
  flat.graded = false;
  const ModelParams params(3, 2);
  CHECK(solve_coefficients(params, laurent).laurent == solve_coefficients(params, flat).laurent);
}

TEST_CASE("four bodies at l = 1 reproduce the clique formula") {
  CHECK(solve_coefficients(ModelParams(4, 1)).laurent == ell1_conjecture_table(4));
}

TEST_CASE("exact correlation agrees with floating evaluation") {
  std::mt19937_64 rng(6);
  const auto table = c3_table(2);
  const Wavefunction wf(ModelParams(3, 2), std::make_shared<CoefficientTable>(product_to_laurent(table)));
  const auto s = random_sample(3, rng);
  std::vector<double> x, p;
  for (int i = 0; i < 3; ++i) {
    x.push_back(s.x[i].get_d());
    p.push_back(s.p[i].get_d());
  }
  const auto exact = exact_correlation(table, s);
  const Complex fl = wf.correlation(x, p);
  CHECK(std::abs(fl - Complex(exact.re.get_d(), exact.im.get_d())) < 1e-12 * std::abs(fl));
}

TEST_CASE("samples are distinct") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const auto s = random_sample(5, rng);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        CHECK(s.x[i] != s.x[j]);
        CHECK(s.p[i] != s.p[j]);
      }
  }
}
