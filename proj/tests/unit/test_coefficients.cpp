#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "calogero/coefficients.hpp"
#include "calogero/errors.hpp"

using namespace calogero;

TEST_CASE("two-body closed form") {
  const int ell = 4;
  const long expected[] = {1, 20, 180, 840, 1680};
  for (int a = 0; a <= ell; ++a) CHECK(c2_closed(a, ell) == expected[a]);
  CHECK_THROWS_AS(c2_closed(5, 4), DomainError);
  const auto t = closed_form_laurent_table(2, 4);
  REQUIRE(t);
  CHECK(t->size() == 5);
  CHECK(t->status() == TableStatus::Theorem);
}

TEST_CASE("three-body product table is diagonal") {
  const auto t = c3_table(1);
  CHECK(t.representation() == Representation::ProductOfF);
  CHECK(t.value({0, 0, 0}) == 1);
  CHECK(t.value({1, 1, 1}) == make_rational(1, 2));
  CHECK(t.size() == 2);
  for (int ell = 0; ell <= 5; ++ell) {
    const auto p = c3_table(ell);
    CHECK(p.normalized());
    for (const auto& term : p.terms()) CHECK((term.index[0] == term.index[1] && term.index[1] == term.index[2]));
  }
}

TEST_CASE("three-body Laurent form equals the closed triple sum") {
  for (int ell = 1; ell <= 4; ++ell) {
    const auto laurent = product_to_laurent(c3_table(ell));
    for (int a = 0; a <= ell; ++a)
      for (int b = 0; b <= ell; ++b)
        for (int c = 0; c <= ell; ++c) {
          const MultiIndex m{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)};
          CHECK(laurent.value(m) == c3_closed(a, b, c, ell));
        }
  }
}

TEST_CASE("product and Laurent representations are inverse") {
  for (int ell = 0; ell <= 4; ++ell) {
    const auto p = c3_table(ell);
    CHECK(laurent_to_product(product_to_laurent(p)) == p);
  }
}

TEST_CASE("Laurent coefficients are invariant under relabelling") {
  for (int n = 3; n <= 5; ++n) {
    const auto t = ell1_conjecture_table(n);
    for (const auto& sigma : permutations(n))
      for (const auto& term : t.terms()) REQUIRE(t.value(relabel(term.index, sigma)) == term.value);
  }
}

TEST_CASE("clique formula extremes") {
  const long top[] = {2, 12, 288, 34560};
  for (int n = 2; n <= 5; ++n) {
    const auto t = ell1_conjecture_table(n);
    CHECK(t.value(MultiIndex(static_cast<std::size_t>(pair_count(n)), 1)) == top[n - 2]);
    CHECK(t.normalized());
    CHECK(t.size() == (std::size_t{1} << pair_count(n)));
    CHECK(t.status() == (n <= 3 ? TableStatus::Theorem : TableStatus::Conjecture));
  }
  CHECK(f_sequence(2) == 2);
  CHECK(f_sequence(3) == make_rational(3, 2));
  CHECK_THROWS_AS(ell1_conjecture_table(8), SizeLimitError);
}

TEST_CASE("clique counting") {
  const auto g = PairGraph::from_multi_index(4, {1, 1, 0, 1, 0, 0});
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(2, 3));
  CHECK(clique_count(g, 2) == 3);
  CHECK(clique_count(g, 3) == 1);
  CHECK(clique_count(g, 4) == 0);
}

TEST_CASE("multi-index enumeration") {
  CHECK(multi_index_count(3, 2) == 27);
  const auto all = all_multi_indices(3, 1);
  REQUIRE(all.size() == 8);
  CHECK(all.front() == MultiIndex{0, 0, 0});
  CHECK(all.back() == MultiIndex{1, 1, 1});
  CHECK_THROWS_AS(multi_index_count(8, 3), SizeLimitError);
}

TEST_CASE("table JSON round trip") {
  const auto t = product_to_laurent(c3_table(3));
  const auto back = table_from_json(to_json(t));
  CHECK(back == t);
  CHECK(back.status() == t.status());
  CHECK(back.representation() == Representation::LaurentMonomial);

  const auto path = (std::filesystem::temp_directory_path() / "calogero_table_roundtrip.json").string();
  save_table(t, path);
  CHECK(load_table(path) == t);
  std::remove(path.c_str());
  CHECK_THROWS_AS(table_from_json("{\"N\":3}"), DomainError);
}

TEST_CASE("table construction drops zeros and validates shape") {
  std::map<MultiIndex, BigRational> terms{{{0}, 1}, {{1}, 0}};
  const CoefficientTable t(2, 1, Representation::LaurentMonomial, TableStatus::Oracle, terms);
  CHECK(t.size() == 1);
  CHECK_THROWS_AS(CoefficientTable(2, 1, Representation::LaurentMonomial, TableStatus::Oracle, {{{2}, 1}}),
                  DomainError);
  CHECK_THROWS_AS(CoefficientTable(3, 1, Representation::LaurentMonomial, TableStatus::Oracle, {{{0}, 1}}),
                  DomainError);
}

TEST_CASE("closed forms exist where expected") {
  CHECK(closed_form_laurent_table(1, 3) != nullptr);
  CHECK(closed_form_laurent_table(5, 0) != nullptr);
  CHECK(closed_form_laurent_table(7, 1) != nullptr);
  CHECK(closed_form_laurent_table(4, 2) == nullptr);
}
