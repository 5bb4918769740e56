#include "calogero/coefficients.hpp"

#include <algorithm>
#include <mutex>

#include "calogero/errors.hpp"
#include "calogero/two_body.hpp"

namespace calogero {

std::string_view to_string(Representation r) {
  return r == Representation::ProductOfF ? "ProductOfF" : "LaurentMonomial";
}

std::string_view to_string(TableStatus s) {
  switch (s) {
    case TableStatus::Theorem:
      return "theorem";
    case TableStatus::Conjecture:
      return "conjecture";
    case TableStatus::Oracle:
      return "oracle";
  }
  return "oracle";
}

Representation parse_representation(std::string_view s) {
  if (s == "ProductOfF") return Representation::ProductOfF;
  if (s == "LaurentMonomial") return Representation::LaurentMonomial;
  throw DomainError("unknown representation '" + std::string(s) + "'");
}

TableStatus parse_status(std::string_view s) {
  if (s == "theorem") return TableStatus::Theorem;
  if (s == "conjecture") return TableStatus::Conjecture;
  if (s == "oracle") return TableStatus::Oracle;
  throw DomainError("unknown table status '" + std::string(s) + "'");
}

std::size_t multi_index_count(int n, int ell) {
  if (n < 1 || ell < 0) throw DomainError("multi_index_count: invalid (N, l)");
  std::size_t count = 1;
  for (int s = 0; s < pair_count(n); ++s) {
    count *= static_cast<std::size_t>(ell + 1);
    if (count > kMaxTableEnumeration) {
      throw SizeLimitError("multi-index space (l+1)^{N(N-1)/2} too large for N=" + std::to_string(n) +
                           ", l=" + std::to_string(ell));
    }
  }
  return count;
}

std::vector<MultiIndex> all_multi_indices(int n, int ell) {
  const std::size_t count = multi_index_count(n, ell);
  const auto slots = static_cast<std::size_t>(pair_count(n));
  std::vector<MultiIndex> out;
  out.reserve(count);
  MultiIndex m(slots, 0);
  for (std::size_t c = 0; c < count; ++c) {
    out.push_back(m);
    for (std::size_t s = slots; s-- > 0;) {
      if (m[s] < ell) {
        ++m[s];
        break;
      }
      m[s] = 0;
    }
  }
  return out;
}

MultiIndex relabel(const MultiIndex& m, const Permutation& sigma) {
  const int n = sigma.size();
  if (m.size() != static_cast<std::size_t>(pair_count(n))) throw DomainError("relabel: size mismatch");
  MultiIndex out(m.size(), 0);
  const auto pairs = pair_indices(n);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    out[static_cast<std::size_t>(pair_slot(sigma[pairs[s].i], sigma[pairs[s].j], n))] = m[s];
  }
  return out;
}

CoefficientTable::CoefficientTable(int n, int ell, Representation representation, TableStatus status,
                                   std::map<MultiIndex, BigRational> terms)
    : n_(n), ell_(ell), representation_(representation), status_(status) {
  if (n < 1) throw DomainError("coefficient table with N < 1");
  if (ell < 0 || ell > kMaxEll) throw DomainError("coefficient table with l outside 0.." + std::to_string(kMaxEll));
  const auto slots = static_cast<std::size_t>(pair_count(n));
  terms_.reserve(terms.size());
  for (auto& [m, v] : terms) {
    if (m.size() != slots) throw DomainError("multi-index length does not match N(N-1)/2");
    for (auto e : m) {
      if (e > ell) throw DomainError("multi-index entry exceeds l");
    }
    if (v == 0) continue;
    terms_.push_back({m, v});
  }
}

BigRational CoefficientTable::value(const MultiIndex& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const TableTerm& t, const MultiIndex& key) { return t.index < key; });
  if (it != terms_.end() && it->index == m) return it->value;
  return 0;
}

bool CoefficientTable::normalized() const {
  return value(MultiIndex(static_cast<std::size_t>(slots()), 0)) == 1;
}

CoefficientTable CoefficientTable::with_status(TableStatus status) const {
  CoefficientTable copy = *this;
  copy.status_ = status;
  return copy;
}

bool operator==(const CoefficientTable& a, const CoefficientTable& b) {
  if (a.n_ != b.n_ || a.ell_ != b.ell_ || a.representation_ != b.representation_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].index != b.terms_[i].index || a.terms_[i].value != b.terms_[i].value) return false;
  }
  return true;
}

BigRational c2_closed(int a, int ell) {
  if (ell < 0 || a < 0 || a > ell) throw DomainError("c2_closed: need 0 <= a <= l");
  return factorial_ratio(ell + a, ell - a) / BigRational(factorial(a));
}

BigRational c3_closed(int a, int b, int c, int ell) {
  if (ell < 0 || a < 0 || b < 0 || c < 0 || a > ell || b > ell || c > ell) {
    throw DomainError("c3_closed: need 0 <= a,b,c <= l");
  }
  BigRational sum = 0;
  const int kmax = std::min({a, b, c});
  for (int k = 0; k <= kmax; ++k) {
    BigRational term = factorial_ratio(ell - k, ell + k);
    term *= BigRational(factorial(a) * factorial(b) * factorial(c));
    term /= BigRational(factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k));
    sum += term;
  }
  return c2_closed(a, ell) * c2_closed(b, ell) * c2_closed(c, ell) * sum;
}

CoefficientTable c3_table(int ell) {
  if (ell < 0) throw DomainError("c3_table: l < 0");
  std::map<MultiIndex, BigRational> terms;
  for (int k = 0; k <= ell; ++k) {
    const auto kk = static_cast<std::uint8_t>(k);
    terms[MultiIndex{kk, kk, kk}] = factorial_ratio(ell - k, ell + k) / BigRational(factorial(k));
  }
  return CoefficientTable(3, ell, Representation::ProductOfF, TableStatus::Theorem, std::move(terms));
}

CoefficientTable c2_table(int ell) {
  std::map<MultiIndex, BigRational> terms{{MultiIndex{0}, BigRational(1)}};
  return CoefficientTable(2, ell, Representation::ProductOfF, TableStatus::Theorem, std::move(terms));
}

PairGraph PairGraph::from_multi_index(int n, const MultiIndex& m) {
  if (m.size() != static_cast<std::size_t>(pair_count(n))) throw DomainError("PairGraph: size mismatch");
  PairGraph g{n, std::vector<int>(m.begin(), m.end())};
  return g;
}

bool PairGraph::has_edge(int i, int j) const {
  return multiplicity[static_cast<std::size_t>(pair_slot(i, j, nodes))] > 0;
}

namespace {

// Adjacency bitmasks, one per node.
std::vector<std::uint32_t> adjacency(const PairGraph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.nodes), 0);
  for (const auto& [i, j] : pair_indices(g.nodes)) {
    if (g.has_edge(i, j)) {
      adj[static_cast<std::size_t>(i)] |= 1u << j;
      adj[static_cast<std::size_t>(j)] |= 1u << i;
    }
  }
  return adj;
}

// q_n for every n in 0..nodes.
std::vector<std::uint64_t> clique_profile(const std::vector<std::uint32_t>& adj) {
  const auto nodes = static_cast<int>(adj.size());
  std::vector<std::uint64_t> q(static_cast<std::size_t>(nodes) + 1, 0);
  const std::uint32_t full = nodes >= 32 ? ~0u : ((1u << nodes) - 1u);
  for (std::uint32_t s = 0; s <= full; ++s) {
    bool clique = true;
    for (int v = 0; v < nodes && clique; ++v) {
      if ((s >> v) & 1u) clique = ((adj[static_cast<std::size_t>(v)] | (1u << v)) & s) == s;
    }
    if (clique) ++q[static_cast<std::size_t>(std::popcount(s))];
    if (s == full) break;
  }
  return q;
}

}  // namespace

std::uint64_t clique_count(const PairGraph& graph, int n) {
  if (graph.nodes > 20) throw SizeLimitError("clique_count: more than 20 nodes");
  if (n < 0 || n > graph.nodes) return 0;
  return clique_profile(adjacency(graph))[static_cast<std::size_t>(n)];
}

BigRational f_sequence(int n) {
  if (n < 2) throw DomainError("f_sequence: n < 2");
  if (n > 64) throw SizeLimitError("f_sequence: n > 64");
  static std::mutex mutex;
  static std::vector<BigRational> cache;  // cache[k] = f_k, k >= 2
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) <= n) {
    const int big_n = static_cast<int>(cache.size());
    if (big_n < 2) {
      cache.emplace_back(0);
      continue;
    }
    BigRational value = 1;
    for (int k = 2; k <= big_n; ++k) value *= BigRational(factorial(k));
    for (int k = 2; k < big_n; ++k) {
      BigRational power;
      mpz_pow_ui(power.get_num_mpz_t(), cache[static_cast<std::size_t>(k)].get_num_mpz_t(),
                 binomial(big_n, k).get_ui());
      mpz_pow_ui(power.get_den_mpz_t(), cache[static_cast<std::size_t>(k)].get_den_mpz_t(),
                 binomial(big_n, k).get_ui());
      value /= power;
    }
    cache.push_back(value);
  }
  return cache[static_cast<std::size_t>(n)];
}

namespace {

BigRational rational_pow(const BigRational& base, unsigned long e) {
  BigRational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

BigRational conjecture_value(const std::vector<std::uint64_t>& q, int n) {
  BigRational v = 1;
  for (int k = 2; k <= n; ++k) {
    const auto qk = q[static_cast<std::size_t>(k)];
    if (qk) v *= rational_pow(f_sequence(k), qk);
  }
  return v;
}

void check_ell1_size(int n) {
  if (n < 2 || n > 7) throw SizeLimitError("l=1 clique table supports 2 <= N <= 7, got N=" + std::to_string(n));
}

}  // namespace

BigRational ell1_conjecture_coefficient(int n, const MultiIndex& m) {
  if (n < 2 || n > 8) throw SizeLimitError("l=1 clique coefficient supports 2 <= N <= 8");
  for (auto e : m) {
    if (e > 1) throw DomainError("l=1 multi-index entries must be 0 or 1");
  }
  return conjecture_value(clique_profile(adjacency(PairGraph::from_multi_index(n, m))), n);
}

CoefficientTable ell1_conjecture_table(int n) {
  check_ell1_size(n);
  // Powers f_k^q cached per (k, q).
  std::vector<std::vector<BigRational>> powers(static_cast<std::size_t>(n) + 1);
  for (int k = 2; k <= n; ++k) {
    const auto max_q = binomial(n, k).get_ui();
    auto& row = powers[static_cast<std::size_t>(k)];
    row.reserve(max_q + 1);
    row.emplace_back(1);
    for (unsigned long q = 1; q <= max_q; ++q) row.push_back(row.back() * f_sequence(k));
  }
  std::map<MultiIndex, BigRational> terms;
  for (auto& m : all_multi_indices(n, 1)) {
    const auto q = clique_profile(adjacency(PairGraph::from_multi_index(n, m)));
    BigRational v = 1;
    for (int k = 2; k <= n; ++k) v *= powers[static_cast<std::size_t>(k)][q[static_cast<std::size_t>(k)]];
    if (!is_integer(v) || v < 1) {
      throw ConjectureViolation("clique formula produced non-integer coefficient " + to_string(v) + " at N=" +
                                std::to_string(n));
    }
    terms.emplace(std::move(m), std::move(v));
  }
  return CoefficientTable(n, 1, Representation::LaurentMonomial,
                          n <= 3 ? TableStatus::Theorem : TableStatus::Conjecture, std::move(terms));
}

CoefficientTable product_to_laurent(const CoefficientTable& table) {
  if (table.representation() != Representation::ProductOfF) {
    throw DomainError("product_to_laurent: table is not in ProductOfF representation");
  }
  const int ell = table.ell();
  const auto poly = TwoBodyPolynomials::get(ell);
  const auto slots = static_cast<std::size_t>(table.slots());
  std::map<MultiIndex, BigRational> out;
  MultiIndex a(slots, 0);
  for (const auto& [k, c] : table.terms()) {
    // Odometer over a_s in k_s..l for every slot.
    for (std::size_t s = 0; s < slots; ++s) a[s] = k[s];
    while (true) {
      BigRational term = c;
      for (std::size_t s = 0; s < slots; ++s) term *= poly->exact(k[s], a[s]);
      out[a] += term;
      std::size_t s = slots;
      while (s-- > 0) {
        if (a[s] < ell) {
          ++a[s];
          break;
        }
        a[s] = k[s];
      }
      if (s == static_cast<std::size_t>(-1)) break;
    }
  }
  return CoefficientTable(table.n(), ell, Representation::LaurentMonomial, table.status(), std::move(out));
}

CoefficientTable laurent_to_product(const CoefficientTable& table) {
  if (table.representation() != Representation::LaurentMonomial) {
    throw DomainError("laurent_to_product: table is not in LaurentMonomial representation");
  }
  const int ell = table.ell();
  const auto poly = TwoBodyPolynomials::get(ell);
  const auto indices = all_multi_indices(table.n(), ell);
  const auto slots = static_cast<std::size_t>(table.slots());
  const auto base = static_cast<std::size_t>(ell + 1);
  auto flat = [&](const MultiIndex& m) {
    std::size_t f = 0;
    for (auto e : m) f = f * base + e;
    return f;
  };
  // C(m) = sum_{k <= m} c(k) prod_s coef(k_s, m_s); lexicographic order visits every k <= m first.
  std::vector<BigRational> product(indices.size());
  MultiIndex k(slots, 0);
  for (std::size_t idx = 0; idx < indices.size(); ++idx) {
    const MultiIndex& m = indices[idx];
    BigRational rest = table.value(m);
    std::fill(k.begin(), k.end(), 0);
    while (true) {
      if (k != m) {
        const auto& ck = product[flat(k)];
        if (ck != 0) {
          BigRational term = ck;
          for (std::size_t s = 0; s < slots; ++s) term *= poly->exact(k[s], m[s]);
          rest -= term;
        }
      }
      std::size_t s = slots;
      while (s-- > 0) {
        if (k[s] < m[s]) {
          ++k[s];
          break;
        }
        k[s] = 0;
      }
      if (s == static_cast<std::size_t>(-1)) break;
    }
    BigRational diag = 1;
    for (std::size_t s = 0; s < slots; ++s) diag *= poly->exact(m[s], m[s]);
    product[idx] = rest / diag;
  }
  std::map<MultiIndex, BigRational> out;
  for (std::size_t idx = 0; idx < indices.size(); ++idx) {
    if (product[idx] != 0) out.emplace(indices[idx], std::move(product[idx]));
  }
  return CoefficientTable(table.n(), ell, Representation::ProductOfF, table.status(), std::move(out));
}

std::shared_ptr<const CoefficientTable> closed_form_laurent_table(int n, int ell) {
  if (n < 1 || ell < 0) throw DomainError("closed_form_laurent_table: invalid (N, l)");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const CoefficientTable>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(n, ell);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::shared_ptr<const CoefficientTable> table;
  const auto slots = static_cast<std::size_t>(pair_count(n));
  if (n == 1 || ell == 0) {
    std::map<MultiIndex, BigRational> terms{{MultiIndex(slots, 0), BigRational(1)}};
    table = std::make_shared<const CoefficientTable>(n, ell, Representation::LaurentMonomial, TableStatus::Theorem,
                                                     std::move(terms));
  } else if (n == 2) {
    std::map<MultiIndex, BigRational> terms;
    for (int a = 0; a <= ell; ++a) terms.emplace(MultiIndex(1, static_cast<std::uint8_t>(a)), c2_closed(a, ell));
    table = std::make_shared<const CoefficientTable>(n, ell, Representation::LaurentMonomial, TableStatus::Theorem,
                                                     std::move(terms));
  } else if (n == 3) {
    std::map<MultiIndex, BigRational> terms;
    for (auto& m : all_multi_indices(3, ell)) terms.emplace(m, c3_closed(m[0], m[1], m[2], ell));
    table = std::make_shared<const CoefficientTable>(n, ell, Representation::LaurentMonomial, TableStatus::Theorem,
                                                     std::move(terms));
  } else if (ell == 1 && n <= 7) {
    table = std::make_shared<const CoefficientTable>(ell1_conjecture_table(n));
  }
  cache.emplace(key, table);
  return table;
}

}  // namespace calogero
