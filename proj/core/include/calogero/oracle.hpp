#pragma once

// Exact-rational recovery and verification of coefficient tables. For the ansatz
// Phi = F e^{ip.x} the eigen-equation at omega = 0 reduces to
//   R[F] = -1/2 Lap F - i p.grad F + sum_{i<j} l(l+1)/(x_i-x_j)^2 F = 0,
// which is linear in the unknown coefficients of F.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "calogero/coefficients.hpp"
#include "calogero/exact_solve.hpp"
#include "calogero/wavefunction.hpp"

namespace calogero {

/// a + b i with exact rational parts.
struct GaussRational {
  BigRational re;
  BigRational im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator*=(const BigRational& s);
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator*(GaussRational a, const BigRational& s) { return a *= s; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const GaussRational& z);

/// Rational configuration and momentum with pairwise-distinct entries.
struct RationalSample {
  std::vector<BigRational> x;
  std::vector<BigRational> p;
};

/// x_i, p_i distinct integers in [-9, 9] divided by q in {1, 2, 3} (one q per vector).
RationalSample random_sample(int n, std::mt19937_64& rng);

/// R[B] at the sample for each basis function B named by `unknowns` (Pi F_k or Pi X^{-m}).
/// Throws SingularityError on coincident coordinates or momenta.
std::vector<GaussRational> residual_row(const RationalSample& sample, const ModelParams& params,
                                        Representation basis, const std::vector<MultiIndex>& unknowns);

/// R[F] for the table's F, exactly.
GaussRational table_residual(const CoefficientTable& table, const RationalSample& sample);

/// F_N(x;p) in exact arithmetic.
GaussRational exact_correlation(const CoefficientTable& table, const RationalSample& sample);

inline constexpr std::size_t kMaxOracleUnknowns = 4096;

struct SolveOptions {
  /// Unknown basis. nullopt: ProductOfF when the table has at most 128 entries, else LaurentMonomial.
  std::optional<Representation> basis;
  /// Laurent basis only: solve degree by degree (the identity is homogeneous in 1/X).
  bool graded = true;
  std::uint64_t seed = 0x5eed2024ULL;
  double margin = 0.25;
  SolveMethod method = SolveMethod::Auto;
};

struct SolveReport {
  CoefficientTable product;  // status Oracle
  CoefficientTable laurent;  // status Oracle
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::size_t samples = 0;
  std::string method;
  bool held_out_zero = false;
  double seconds = 0.0;
};

/// Solves for c_N with normalization c(0,...,0) = 1. Throws SizeLimitError above
/// kMaxOracleUnknowns, DegenerateSamplingError if two independent sample sets are rank
/// deficient, NoSolutionError if the ansatz admits no solution, and Error if the solution
/// fails a fresh held-out sample.
SolveReport solve_coefficients(const ModelParams& params, const SolveOptions& options = {});

struct VerifyReport {
  BigRational max_residual;  // max over samples of max(|Re R|, |Im R|)
  std::size_t trials = 0;
  double seconds = 0.0;
  bool exact_zero() const { return sgn(max_residual) == 0; }
};

VerifyReport verify_table(const CoefficientTable& table, const ModelParams& params, int trials,
                          std::uint64_t seed = 0x5eed2024ULL);

}  // namespace calogero
