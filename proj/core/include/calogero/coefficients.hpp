#pragma once

// Coefficient tables of the correlation factor
//   F_N(x;p) = sum_k c_N(k) prod_{i<j} F_{k_ij}(X_ij)          (ProductOfF)
//            = sum_m C_N(m) prod_{i<j} X_ij^{-m_ij}             (LaurentMonomial)
// with multi-indices over the pairs of {1..N} in lexicographic pair order.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "calogero/foundation.hpp"

namespace calogero {

/// Exponent (or F-index) per pair slot, canonical pair order.
using MultiIndex = std::vector<std::uint8_t>;

enum class Representation { ProductOfF, LaurentMonomial };

/// Provenance of a table. Theorem: closed forms for N <= 3 or l = 0.
/// Conjecture: the l = 1 clique formula for N >= 4. Oracle: exact linear solve.
enum class TableStatus { Theorem, Conjecture, Oracle };

std::string_view to_string(Representation r);
std::string_view to_string(TableStatus s);
Representation parse_representation(std::string_view s);
TableStatus parse_status(std::string_view s);

/// Largest table (number of multi-indices) that is ever enumerated densely.
inline constexpr std::size_t kMaxTableEnumeration = std::size_t{1} << 21;

/// Number of multi-indices (l+1)^{N(N-1)/2}, or SizeLimitError above kMaxTableEnumeration.
std::size_t multi_index_count(int n, int ell);

/// Every multi-index in {0..l}^{N(N-1)/2}, lexicographic order (all-zero first).
std::vector<MultiIndex> all_multi_indices(int n, int ell);

/// Relabels particles: pair {i,j} of `m` moves to {sigma(i), sigma(j)}.
MultiIndex relabel(const MultiIndex& m, const Permutation& sigma);

struct TableTerm {
  MultiIndex index;
  BigRational value;
};

/// Immutable sparse table of exact rational amplitudes; zero entries are dropped.
class CoefficientTable {
 public:
  CoefficientTable(int n, int ell, Representation representation, TableStatus status,
                   std::map<MultiIndex, BigRational> terms);

  int n() const noexcept { return n_; }
  int ell() const noexcept { return ell_; }
  int slots() const noexcept { return pair_count(n_); }
  Representation representation() const noexcept { return representation_; }
  TableStatus status() const noexcept { return status_; }

  /// Nonzero terms in canonical (lexicographic) order.
  const std::vector<TableTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Value at `m` (zero when absent).
  BigRational value(const MultiIndex& m) const;
  /// True when the all-zero index carries exactly 1.
  bool normalized() const;

  CoefficientTable with_status(TableStatus status) const;

  friend bool operator==(const CoefficientTable& a, const CoefficientTable& b);

 private:
  int n_;
  int ell_;
  Representation representation_;
  TableStatus status_;
  std::vector<TableTerm> terms_;
};

/// C_2(a) = (l+a)!/((l-a)! a!). Throws DomainError unless 0 <= a <= l.
BigRational c2_closed(int a, int ell);

/// C_3(a,b,c) = C_2(a)C_2(b)C_2(c) sum_{k=0}^{min} (l-k)! a!b!c! / ((l+k)! k! (a-k)!(b-k)!(c-k)!).
BigRational c3_closed(int a, int b, int c, int ell);

/// N = 3 product table: only diagonal (k,k,k) entries, value (l-k)!/((l+k)! k!).
CoefficientTable c3_table(int ell);

/// N = 2 product table {(0): 1}.
CoefficientTable c2_table(int ell);

/// Multigraph on N nodes with edge multiplicity per pair slot.
struct PairGraph {
  int nodes;
  std::vector<int> multiplicity;

  static PairGraph from_multi_index(int n, const MultiIndex& m);
  bool has_edge(int i, int j) const;
};

/// Number of n-node subsets that are fully connected (multiplicity >= 1 on every pair).
std::uint64_t clique_count(const PairGraph& graph, int n);

/// f_n from prod_{k=2}^{N} f_k^{binom(N,k)} = prod_{k=2}^{N} k!, exact. Throws DomainError for n < 2.
BigRational f_sequence(int n);

/// prod_{k=2}^{N} f_k^{q_k(m)} for an l = 1 multi-index.
BigRational ell1_conjecture_coefficient(int n, const MultiIndex& m);

/// Laurent table over {0,1}^{N(N-1)/2} from the clique formula (status Conjecture for N >= 4,
/// Theorem for N <= 3). Throws ConjectureViolation if any value is not a positive integer,
/// SizeLimitError outside 2 <= N <= 7.
CoefficientTable ell1_conjecture_table(int n);

/// Expands each prod F_{k_ij} into Laurent monomials with the exact F_k coefficients.
CoefficientTable product_to_laurent(const CoefficientTable& table);

/// Inverse of product_to_laurent (triangular back-substitution in the componentwise order).
CoefficientTable laurent_to_product(const CoefficientTable& table);

/// Laurent table from closed forms when one exists: N = 1, l = 0, N = 2, N = 3 (theorems)
/// and l = 1 with 4 <= N <= 7 (conjecture). Returns nullptr otherwise.
std::shared_ptr<const CoefficientTable> closed_form_laurent_table(int n, int ell);

/// JSON text {"N","ell","representation","status","terms":[{"m":[...],"value":"num/den"}]}.
std::string to_json(const CoefficientTable& table);
CoefficientTable table_from_json(std::string_view text);

CoefficientTable load_table(const std::string& path);
void save_table(const CoefficientTable& table, const std::string& path);

}  // namespace calogero
