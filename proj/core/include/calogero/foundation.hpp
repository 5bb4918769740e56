#pragma once

// Combinatorial and exact-arithmetic primitives shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace calogero {

using BigInt = mpz_class;
/// Exact rational in lowest terms with a positive denominator (GMP mpq).
using BigRational = mpq_class;

/// Builds num/den in canonical form. Throws DomainError if den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const BigRational& q);

/// Parses "num", "-num" or "num/den". Throws DomainError on malformed input.
BigRational parse_rational(std::string_view text);

bool is_integer(const BigRational& q);

BigInt factorial(long n);

/// a!/b! exactly. Throws DomainError for a negative argument.
BigRational factorial_ratio(long a, long b);

/// Binomial coefficient n choose k (zero outside 0 <= k <= n).
BigInt binomial(long n, long k);

/// Unordered particle pair, stored 0-based with i < j.
struct PairIndex {
  int i;
  int j;

  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

constexpr int pair_count(int n) { return n * (n - 1) / 2; }

/// All pairs of {0,...,n-1} in lexicographic order (0,1),(0,2),...,(n-2,n-1).
std::vector<PairIndex> pair_indices(int n);

/// Position of the pair {i,j} (either order) in pair_indices(n).
int pair_slot(int i, int j, int n);

/// Largest N for which permutation sums are evaluated.
inline constexpr int kMaxPermutationSize = 8;

/// Bijection on {0,...,n-1} together with its parity.
class Permutation {
 public:
  /// Identity on n points.
  explicit Permutation(int n);
  /// Validates that `images` is a bijection and computes its sign.
  explicit Permutation(std::vector<int> images);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator[](int i) const noexcept { return images_[static_cast<std::size_t>(i)]; }
  int sign() const noexcept { return sign_; }
  std::span<const int> images() const noexcept { return images_; }

  /// (*this o other)(i) = (*this)[other[i]].
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }

 private:
  std::vector<int> images_;
  int sign_ = 1;
};

/// All n! permutations of {0,...,n-1} in lexicographic order of their image
/// sequences. Throws SizeLimitError unless 1 <= n <= kMaxPermutationSize.
std::vector<Permutation> permutations(int n);

/// Cached, shared copy of permutations(n) for hot evaluation loops.
const std::vector<Permutation>& permutation_table(int n);

}  // namespace calogero
