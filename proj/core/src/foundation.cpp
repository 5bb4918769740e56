#include "calogero/foundation.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>

#include "calogero/errors.hpp"

namespace calogero {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

BigRational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  return make_rational(BigInt(n), BigInt(std::string(den)));
}

bool is_integer(const BigRational& q) { return q.get_den() == 1; }

BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigRational factorial_ratio(long a, long b) {
  if (a < 0 || b < 0) throw DomainError("factorial_ratio: negative argument");
  // Only the non-cancelling part of the product is formed.
  BigInt num = 1;
  BigInt den = 1;
  for (long k = std::min(a, b) + 1; k <= a; ++k) num *= k;
  for (long k = std::min(a, b) + 1; k <= b; ++k) den *= k;
  return make_rational(num, den);
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::vector<PairIndex> pair_indices(int n) {
  std::vector<PairIndex> out;
  out.reserve(static_cast<std::size_t>(std::max(0, pair_count(n))));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

int pair_slot(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n || i == j) throw DomainError("pair_slot: invalid pair");
  // Pairs before row i: sum_{r<i} (n-1-r).
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

namespace {

int parity_sign(std::span<const int> images) {
  const std::size_t n = images.size();
  std::vector<bool> seen(n, false);
  int sign = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t c = s; !seen[c]; c = static_cast<std::size_t>(images[c])) {
      seen[c] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

Permutation::Permutation(int n) : images_(static_cast<std::size_t>(n)) {
  if (n < 0) throw DomainError("permutation of negative size");
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || hit[static_cast<std::size_t>(v)]) {
      throw DomainError("permutation images are not a bijection");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  sign_ = parity_sign(images_);
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw DomainError("composing permutations of different sizes");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[static_cast<std::size_t>(other.images_[i])];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(out));
}

std::vector<Permutation> permutations(int n) {
  if (n < 1 || n > kMaxPermutationSize) {
    throw SizeLimitError("permutations: N=" + std::to_string(n) + " outside 1.." +
                         std::to_string(kMaxPermutationSize));
  }
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

const std::vector<Permutation>& permutation_table(int n) {
  if (n < 1 || n > kMaxPermutationSize) {
    throw SizeLimitError("permutations: N=" + std::to_string(n) + " outside 1.." +
                         std::to_string(kMaxPermutationSize));
  }
  static std::array<std::once_flag, kMaxPermutationSize + 1> flags;
  static std::array<std::vector<Permutation>, kMaxPermutationSize + 1> tables;
  const auto idx = static_cast<std::size_t>(n);
  std::call_once(flags[idx], [&] { tables[idx] = permutations(n); });
  return tables[idx];
}

}  // namespace calogero
