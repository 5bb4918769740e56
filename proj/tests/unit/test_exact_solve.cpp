#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "calogero/errors.hpp"
#include "calogero/exact_solve.hpp"

using namespace calogero;

namespace {

RationalMatrix random_system(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 6);
  RationalMatrix a(static_cast<std::size_t>(rows), RationalRow(static_cast<std::size_t>(cols)));
  for (auto& row : a)
    for (auto& v : row) v = make_rational(num(rng), den(rng));
  return a;
}

RationalRow multiply(const RationalMatrix& a, const std::vector<BigRational>& x) {
  RationalRow b;
  for (const auto& row : a) b.push_back(row_residual(row, x, 0));
  return b;
}

RationalMatrix ints(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix a;
  for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
  return a;
}

RationalRow vec(std::initializer_list<int> v) { return RationalRow(v.begin(), v.end()); }

}  // namespace

TEST_CASE("both elimination paths recover an exact solution") {
  std::mt19937_64 rng(11);
  for (int cols : {1, 3, 8, 20}) {
    const auto a = random_system(cols + 5, cols, rng);
    std::vector<BigRational> x;
    for (int j = 0; j < cols; ++j) x.push_back(make_rational(j * j - 7, 3 + j));
    const auto b = multiply(a, x);
    for (auto method : {SolveMethod::Bareiss, SolveMethod::MultiModular, SolveMethod::Auto}) {
      const auto sol = solve_exact(a, b, method);
      CHECK((sol.x == x));
    }
  }
}

TEST_CASE("rank deficiency and inconsistency are distinguished") {
  const auto a = ints({{1, 2}, {2, 4}, {3, 6}});
  CHECK_THROWS_AS(solve_exact(a, vec({1, 2, 3})), DegenerateSamplingError);
  const auto b = ints({{1, 0}, {0, 1}, {1, 1}});
  CHECK_THROWS_AS(solve_exact(b, vec({1, 1, 3}), SolveMethod::Bareiss), NoSolutionError);
  CHECK_THROWS_AS(solve_exact(b, vec({1, 1, 3}), SolveMethod::MultiModular), NoSolutionError);
  CHECK((solve_exact(b, vec({1, 1, 2})).x == vec({1, 1})));
}
