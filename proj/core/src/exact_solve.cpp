#include "calogero/exact_solve.hpp"

#include <algorithm>
#include <optional>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

void check_shape(const RationalMatrix& a, const RationalRow& b) {
  if (a.empty()) throw DomainError("solve_exact: empty system");
  const std::size_t n = a.front().size();
  if (n == 0) throw DomainError("solve_exact: no unknowns");
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("solve_exact: ragged matrix");
  if (b.size() != a.size()) throw DomainError("solve_exact: rhs length mismatch");
  if (a.size() < n) throw DegenerateSamplingError("solve_exact: fewer rows than unknowns");
}

// Row scaled by the lcm of its denominators; the rhs is the last entry.
std::vector<BigInt> integer_row(const RationalRow& row, const BigRational& rhs) {
  BigInt l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(row.size() + 1);
  for (const auto& q : row) out.emplace_back(q.get_num() * (l / q.get_den()));
  out.emplace_back(rhs.get_num() * (l / rhs.get_den()));
  return out;
}

ExactSolution solve_bareiss(const RationalMatrix& a, const RationalRow& b) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  std::vector<std::vector<BigInt>> mat;
  mat.reserve(m);
  for (std::size_t i = 0; i < m; ++i) mat.push_back(integer_row(a[i], b[i]));

  BigInt prev = 1;
  BigInt t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < m && sgn(mat[piv][k]) == 0) ++piv;
    if (piv == m) throw DegenerateSamplingError("rank deficient system (column " + std::to_string(k) + ")");
    std::swap(mat[k], mat[piv]);
    const BigInt& pk = mat[k][k];
    for (std::size_t i = k + 1; i < m; ++i) {
      auto& ri = mat[i];
      const BigInt f = ri[k];
      for (std::size_t j = k + 1; j <= n; ++j) {
        // ri[j] = (pk*ri[j] - f*mat[k][j]) / prev, division exact
        mpz_mul(t.get_mpz_t(), pk.get_mpz_t(), ri[j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), f.get_mpz_t(), mat[k][j].get_mpz_t());
        mpz_divexact(ri[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      ri[k] = 0;
    }
    prev = pk;
  }
  for (std::size_t i = n; i < m; ++i)
    if (sgn(mat[i][n]) != 0) throw NoSolutionError("inconsistent system: rhs outside the column space");

  std::vector<BigRational> x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    BigRational s = mat[kk][n];
    for (std::size_t j = kk + 1; j < n; ++j)
      if (sgn(mat[kk][j]) != 0) s -= BigRational(mat[kk][j]) * x[j];
    x[kk] = s / BigRational(mat[kk][kk]);
    x[kk].canonicalize();
  }
  return {std::move(x), "bareiss", 0};
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Rational mod p, nullopt if p divides the denominator.
std::optional<u64> reduce(const BigRational& q, u64 p, BigInt& scratch) {
  const BigInt pp(static_cast<unsigned long>(p));
  mpz_mod(scratch.get_mpz_t(), q.get_den_mpz_t(), pp.get_mpz_t());
  const u64 den = scratch.get_ui();
  if (den == 0) return std::nullopt;
  mpz_mod(scratch.get_mpz_t(), q.get_num_mpz_t(), pp.get_mpz_t());
  return mulmod(scratch.get_ui(), invmod(den, p), p);
}

enum class ModStatus { Ok, BadPrime, RankDeficient, Inconsistent };

// Gauss-Jordan mod p on the augmented matrix. On Ok, x holds the unique solution;
// `rank` is the rank of the coefficient part.
ModStatus solve_mod(const RationalMatrix& a, const RationalRow& b, u64 p, std::vector<u64>& x, std::size_t& rank) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  const std::size_t w = n + 1;
  std::vector<u64> mat(m * w);
  BigInt scratch;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto v = reduce(a[i][j], p, scratch);
      if (!v) return ModStatus::BadPrime;
      mat[i * w + j] = *v;
    }
    auto v = reduce(b[i], p, scratch);
    if (!v) return ModStatus::BadPrime;
    mat[i * w + n] = *v;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t k = 0; k < n && r < m; ++k) {
    std::size_t piv = r;
    while (piv < m && mat[piv * w + k] == 0) ++piv;
    if (piv == m) continue;
    if (piv != r) std::swap_ranges(mat.begin() + static_cast<long>(piv * w), mat.begin() + static_cast<long>(piv * w + w),
                                   mat.begin() + static_cast<long>(r * w));
    u64* rr = &mat[r * w];
    const u64 inv = invmod(rr[k], p);
    for (std::size_t j = k; j < w; ++j) rr[j] = mulmod(rr[j], inv, p);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      u64* ri = &mat[i * w];
      const u64 f = ri[k];
      if (f == 0) continue;
      const u64 nf = p - f;
      for (std::size_t j = k; j < w; ++j) {
        if (rr[j]) ri[j] = static_cast<u64>((static_cast<u128>(nf) * rr[j] + ri[j]) % p);
      }
    }
    pivot_col.push_back(k);
    ++r;
  }
  rank = r;
  for (std::size_t i = r; i < m; ++i)
    if (mat[i * w + n] != 0) return ModStatus::Inconsistent;
  if (r < n) return ModStatus::RankDeficient;
  x.resize(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = mat[k * w + n];
  return ModStatus::Ok;
}

// Smallest |num|, den with num/den = r mod modulus and |num|, den <= sqrt(modulus/2).
std::optional<BigRational> reconstruct(const BigInt& r, const BigInt& modulus) {
  BigInt bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), modulus.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  BigInt r0 = modulus, r1 = r, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  BigRational out(r1, t1);
  out.canonicalize();
  return out;
}

bool satisfies(const RationalMatrix& a, const RationalRow& b, const std::vector<BigRational>& x) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(row_residual(a[i], x, b[i])) != 0) return false;
  return true;
}

ExactSolution solve_multimodular(const RationalMatrix& a, const RationalRow& b) {
  const std::size_t n = a.front().size();
  constexpr int kMaxPrimes = 400;
  BigInt prime = BigInt(1) << 62;
  BigInt modulus = 1;
  std::vector<BigInt> residues(n, BigInt(0));
  std::vector<u64> xm;
  std::vector<BigRational> last;
  int used = 0;
  int deficient = 0;
  int inconsistent = 0;
  for (int attempt = 0; attempt < kMaxPrimes; ++attempt) {
    do {
      mpz_sub_ui(prime.get_mpz_t(), prime.get_mpz_t(), 1);
    } while (mpz_probab_prime_p(prime.get_mpz_t(), 30) == 0);
    const u64 p = prime.get_ui();
    std::size_t rank = 0;
    const ModStatus st = solve_mod(a, b, p, xm, rank);
    if (st == ModStatus::BadPrime) continue;
    if (st == ModStatus::RankDeficient) {
      if (++deficient >= 2) {
        throw DegenerateSamplingError("rank deficient system: rank " + std::to_string(rank) + " of " +
                                      std::to_string(n) + " unknowns");
      }
      continue;
    }
    if (st == ModStatus::Inconsistent) {
      if (++inconsistent >= 2) throw NoSolutionError("inconsistent system: rhs outside the column space");
      continue;
    }
    ++used;
    // CRT: residues <- residues + modulus * ((xm - residues) * modulus^{-1} mod p)
    BigInt minv;
    mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), prime.get_mpz_t());
    BigInt d;
    for (std::size_t j = 0; j < n; ++j) {
      d = BigInt(static_cast<unsigned long>(xm[j])) - residues[j];
      d *= minv;
      mpz_mod(d.get_mpz_t(), d.get_mpz_t(), prime.get_mpz_t());
      residues[j] += modulus * d;
    }
    modulus *= prime;

    std::vector<BigRational> cand;
    cand.reserve(n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      auto q = reconstruct(residues[j], modulus);
      if (!q) ok = false;
      else cand.push_back(std::move(*q));
    }
    if (!ok) continue;
    if (cand == last && satisfies(a, b, cand)) return {std::move(cand), "multimodular", used};
    last = std::move(cand);
  }
  throw NoSolutionError("multi-modular reconstruction did not stabilize");
}

}  // namespace

BigRational row_residual(const RationalRow& row, const std::vector<BigRational>& x, const BigRational& rhs) {
  BigRational s = -rhs;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (sgn(row[j]) != 0 && sgn(x[j]) != 0) s += row[j] * x[j];
  return s;
}

ExactSolution solve_exact(const RationalMatrix& a, const RationalRow& b, SolveMethod method) {
  check_shape(a, b);
  if (method == SolveMethod::Auto)
    method = a.front().size() <= kBareissLimit ? SolveMethod::Bareiss : SolveMethod::MultiModular;
  return method == SolveMethod::Bareiss ? solve_bareiss(a, b) : solve_multimodular(a, b);
}

}  // namespace calogero
