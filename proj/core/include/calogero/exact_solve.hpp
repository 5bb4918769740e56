#pragma once

// Exact solution of overdetermined rational linear systems A x = b with full column rank.

#include <cstdint>
#include <string>
#include <vector>

#include "calogero/foundation.hpp"

namespace calogero {

using RationalRow = std::vector<BigRational>;
using RationalMatrix = std::vector<RationalRow>;

enum class SolveMethod {
  Auto,          // Bareiss up to kBareissLimit unknowns, multi-modular above
  Bareiss,       // fraction-free elimination over the integers
  MultiModular,  // elimination mod word primes, CRT + rational reconstruction, exact check
};

inline constexpr std::size_t kBareissLimit = 96;

struct ExactSolution {
  std::vector<BigRational> x;
  std::string method;
  int primes_used = 0;
};

/// Solves A x = b exactly. Every row of A must have the same length n and rows >= n.
/// Throws DegenerateSamplingError when rank(A) < n, NoSolutionError when b is not in the
/// column space. The multi-modular path re-checks the result against every row in exact
/// arithmetic before returning.
ExactSolution solve_exact(const RationalMatrix& a, const RationalRow& b, SolveMethod method = SolveMethod::Auto);

/// Sum_j row[j] x[j] - rhs, exactly.
BigRational row_residual(const RationalRow& row, const std::vector<BigRational>& x, const BigRational& rhs);

}  // namespace calogero
