#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "calogero/errors.hpp"
#include "calogero/foundation.hpp"

using namespace calogero;

TEST_CASE("rationals are canonical") {
  const auto q = make_rational(6, -4);
  CHECK(to_string(q) == "-3/2");
  CHECK(q.get_den() > 0);
  CHECK(to_string(make_rational(10, 5)) == "2");
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("rational text round trip") {
  for (const char* text : {"0", "7", "-7", "3/4", "-22/7", "123456789012345678901234567891/2"})
    CHECK(to_string(parse_rational(text)) == text);
  CHECK(parse_rational("4/6") == make_rational(2, 3));
  for (const char* bad : {"", "1/", "/2", "a", "1/0", "1.5"}) CHECK_THROWS_AS(parse_rational(bad), DomainError);
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(factorial_ratio(7, 4) == 210);
  CHECK(factorial_ratio(2, 5) == make_rational(1, 60));
  CHECK_THROWS_AS(factorial_ratio(-1, 2), DomainError);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(4, -1) == 0);
  for (long n = 1; n < 15; ++n)
    for (long k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("pair indexing") {
  const auto pairs = pair_indices(4);
  REQUIRE(pairs.size() == 6);
  CHECK(pairs.front() == PairIndex{0, 1});
  CHECK(pairs[2] == PairIndex{0, 3});
  CHECK(pairs.back() == PairIndex{2, 3});
  for (int s = 0; s < 6; ++s) {
    CHECK(pair_slot(pairs[s].i, pairs[s].j, 4) == s);
    CHECK(pair_slot(pairs[s].j, pairs[s].i, 4) == s);
  }
}

TEST_CASE("permutation tables") {
  for (int n = 1; n <= 6; ++n) {
    const auto perms = permutations(n);
    CHECK(perms.size() == factorial(n).get_ui());
    int sign_sum = 0;
    std::set<std::vector<int>> seen;
    for (const auto& p : perms) {
      sign_sum += p.sign();
      seen.insert({p.images().begin(), p.images().end()});
      CHECK(p.compose(p.inverse()) == Permutation(n));
      CHECK(p.inverse().sign() == p.sign());
    }
    CHECK(seen.size() == perms.size());
    CHECK(sign_sum == (n == 1 ? 1 : 0));
  }
  const auto p3 = permutations(3);
  CHECK(p3.front() == Permutation(3));
  CHECK(Permutation({1, 0, 2}).sign() == -1);
  CHECK(Permutation({1, 2, 0}).sign() == 1);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
  CHECK_THROWS_AS(permutations(kMaxPermutationSize + 1), SizeLimitError);
  CHECK_THROWS_AS(permutations(0), SizeLimitError);
}

TEST_CASE("sign is multiplicative under composition") {
  const auto perms = permutations(4);
  for (const auto& a : perms)
    for (std::size_t k = 0; k < perms.size(); k += 5) CHECK(a.compose(perms[k]).sign() == a.sign() * perms[k].sign());
}
