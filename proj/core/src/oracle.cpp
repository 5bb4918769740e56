#include "calogero/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "calogero/errors.hpp"

namespace calogero {

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  BigRational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

GaussRational& GaussRational::operator*=(const BigRational& s) {
  re *= s;
  im *= s;
  return *this;
}

std::string to_string(const GaussRational& z) { return to_string(z.re) + (sgn(z.im) < 0 ? "" : "+") + to_string(z.im) + "i"; }

namespace {

// i^k * x
GaussRational i_pow(int k, const BigRational& x) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {x, 0};
    case 1: return {0, x};
    case 2: return {-x, 0};
    default: return {0, -x};
  }
}

int degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Pair data at one sample: u_e = 1/X_e = i r_e with r_e = 1/(delta_e dx_e) real.
struct Geometry {
  int n = 0;
  int ell = 0;
  std::vector<PairIndex> pairs;
  std::vector<BigRational> delta;
  std::vector<BigRational> d2;
  std::vector<std::vector<BigRational>> rpow;  // r_e^k, k = 0..ell+2

  Geometry(const RationalSample& s, int ell_) : n(static_cast<int>(s.x.size())), ell(ell_), pairs(pair_indices(n)) {
    if (s.p.size() != s.x.size()) throw DomainError("sample: x and p lengths differ");
    for (const auto& e : pairs) {
      const auto i = static_cast<std::size_t>(e.i);
      const auto j = static_cast<std::size_t>(e.j);
      BigRational dp = s.p[i] - s.p[j];
      BigRational dx = s.x[i] - s.x[j];
      if (sgn(dp) == 0 || sgn(dx) == 0) throw SingularityError("oracle sample has coincident coordinates or momenta");
      BigRational r = 1 / (dp * dx);
      std::vector<BigRational> pw(static_cast<std::size_t>(ell + 3));
      pw[0] = 1;
      for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * r;
      d2.push_back(dp * dp);
      delta.push_back(std::move(dp));
      rpow.push_back(std::move(pw));
    }
  }
  std::size_t slots() const { return pairs.size(); }
  const BigRational& r(std::size_t e, int k) const { return rpow[e][static_cast<std::size_t>(k)]; }
};

// Real parts of R[Pi u^m] = i^{|m|+1} a + i^{|m|+2} b:
//   a = R_m sum_e m_e d_e^2 r_e
//   b = R_m [ 1/2 sum_i eta_i^2 + sum_e (m_e - l(l+1)) d_e^2 r_e^2 ],  eta_i = sum_{e ni i} +-m_e d_e r_e
void laurent_parts(const Geometry& g, const MultiIndex& m, BigRational& a, BigRational& b) {
  const BigRational lam(g.ell * (g.ell + 1));
  BigRational rm = 1;
  BigRational s1 = 0;
  BigRational s2 = 0;
  std::vector<BigRational> eta(static_cast<std::size_t>(g.n), BigRational(0));
  for (std::size_t e = 0; e < g.slots(); ++e) {
    const int me = m[e];
    if (me) {
      rm *= g.r(e, me);
      BigRational t = g.delta[e] * g.r(e, 1) * me;
      eta[static_cast<std::size_t>(g.pairs[e].i)] += t;
      eta[static_cast<std::size_t>(g.pairs[e].j)] -= t;
      s1 += g.d2[e] * g.r(e, 1) * me;
    }
    s2 += (BigRational(me) - lam) * g.d2[e] * g.r(e, 2);
  }
  BigRational eta2 = 0;
  for (const auto& v : eta) eta2 += v * v;
  s2 += eta2 / 2;
  a = rm * s1;
  b = rm * s2;
}

GaussRational laurent_entry(const Geometry& g, const MultiIndex& m) {
  BigRational a, b;
  laurent_parts(g, m, a, b);
  const int d = degree(m);
  return i_pow(d + 1, a) + i_pow(d + 2, b);
}

// F_k(X_e) and its first two X-derivatives at every pair, for every k.
struct ProductData {
  std::vector<std::vector<GaussRational>> g0, g1, g2;  // [e][k]

  explicit ProductData(const Geometry& g) {
    const auto& poly = *TwoBodyPolynomials::get(g.ell);
    const auto slots = g.slots();
    g0.assign(slots, std::vector<GaussRational>(static_cast<std::size_t>(g.ell + 1)));
    g1 = g0;
    g2 = g0;
    for (std::size_t e = 0; e < slots; ++e) {
      for (int k = 0; k <= g.ell; ++k) {
        GaussRational v0, v1, v2;
        for (int a = k; a <= g.ell; ++a) {
          const BigRational& c = poly.exact(k, a);
          v0 += i_pow(a, c * g.r(e, a));
          v1 += i_pow(a + 1, c * BigRational(-a) * g.r(e, a + 1));
          v2 += i_pow(a + 2, c * BigRational(a * (a + 1)) * g.r(e, a + 2));
        }
        const auto uk = static_cast<std::size_t>(k);
        g0[e][uk] = std::move(v0);
        g1[e][uk] = std::move(v1);
        g2[e][uk] = std::move(v2);
      }
    }
  }
};

// R[Pi_e F_{k_e}(X_e)]:
//   sum_e d_e^2 (G''_e - G'_e) Pi_{f!=e} G_f
// + sum_i sum_{e<f, e,f ni i} s_ei s_fi d_e d_f G'_e G'_f Pi_{g!=e,f} G_g
// + l(l+1) sum_e d_e^2 r_e^2 Pi G
GaussRational product_entry(const Geometry& g, const ProductData& pd, const MultiIndex& k) {
  const std::size_t slots = g.slots();
  auto G = [&](std::size_t e) -> const GaussRational& { return pd.g0[e][k[e]]; };
  auto G1 = [&](std::size_t e) -> const GaussRational& { return pd.g1[e][k[e]]; };
  auto G2 = [&](std::size_t e) -> const GaussRational& { return pd.g2[e][k[e]]; };
  auto product_except = [&](std::size_t skip1, std::size_t skip2) {
    GaussRational p{1, 0};
    for (std::size_t f = 0; f < slots; ++f)
      if (f != skip1 && f != skip2) p *= G(f);
    return p;
  };

  GaussRational out;
  const GaussRational all = product_except(slots, slots);
  BigRational vsum = 0;
  for (std::size_t e = 0; e < slots; ++e) {
    out += (G2(e) - G1(e)) * product_except(e, slots) * g.d2[e];
    vsum += g.d2[e] * g.r(e, 2);
  }
  out += all * (vsum * BigRational(g.ell * (g.ell + 1)));
  for (std::size_t e = 0; e < slots; ++e) {
    for (std::size_t f = e + 1; f < slots; ++f) {
      const PairIndex a = g.pairs[e];
      const PairIndex b = g.pairs[f];
      // shared vertex and the orientation signs there
      int sign = 0;
      if (a.i == b.i) sign = 1;
      else if (a.j == b.j) sign = 1;
      else if (a.i == b.j || a.j == b.i) sign = -1;
      if (sign == 0) continue;
      out += G1(e) * G1(f) * product_except(e, f) * (g.delta[e] * g.delta[f] * sign);
    }
  }
  return out;
}

void check_table_params(const CoefficientTable& table, const ModelParams& params) {
  if (table.n() != params.n() || table.ell() != params.ell())
    throw DomainError("table (N, l) does not match model parameters");
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CoefficientTable make_table(int n, int ell, Representation rep, const std::vector<MultiIndex>& unknowns,
                            const std::vector<BigRational>& values) {
  std::map<MultiIndex, BigRational> terms;
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    if (sgn(values[j]) != 0) terms.emplace(unknowns[j], values[j]);
  return CoefficientTable(n, ell, rep, TableStatus::Oracle, std::move(terms));
}

// Dense solve in either basis; c(0) = 1 is moved to the right-hand side.
std::vector<BigRational> dense_solve(const ModelParams& params, Representation basis,
                                     const std::vector<MultiIndex>& unknowns, const SolveOptions& opt,
                                     std::mt19937_64& rng, SolveReport& report) {
  const std::size_t free = unknowns.size() - 1;
  const auto target = static_cast<std::size_t>(std::ceil(static_cast<double>(free) * (1.0 + opt.margin))) + 1;
  for (int attempt = 0;; ++attempt) {
    RationalMatrix a;
    RationalRow b;
    std::size_t samples = 0;
    while (a.size() < target) {
      const auto row = residual_row(random_sample(params.n(), rng), params, basis, unknowns);
      ++samples;
      for (int part = 0; part < 2; ++part) {
        RationalRow r(free);
        bool nonzero = false;
        for (std::size_t j = 1; j < unknowns.size(); ++j) {
          r[j - 1] = part == 0 ? row[j].re : row[j].im;
          nonzero = nonzero || sgn(r[j - 1]) != 0;
        }
        if (!nonzero) continue;
        a.push_back(std::move(r));
        b.push_back(part == 0 ? -row[0].re : -row[0].im);
      }
    }
    try {
      auto sol = solve_exact(a, b, opt.method);
      report.rows += a.size();
      report.samples += samples;
      report.method = "dense-" + std::string(to_string(basis)) + "/" + sol.method;
      std::vector<BigRational> values;
      values.reserve(unknowns.size());
      values.emplace_back(1);
      for (auto& v : sol.x) values.push_back(std::move(v));
      return values;
    } catch (const DegenerateSamplingError&) {
      if (attempt >= 1) throw;
    }
  }
}

// Graded Laurent solve. With a_m, b_m from laurent_parts, the degree-(d+1) part of R gives
//   sum_{|m|=d} C_m a_m = - sum_{|m|=d-1} C_m b_m,
// one real equation per sample, and the top degree requires sum_{|m|=top} C_m b_m = 0.
std::vector<BigRational> graded_solve(const ModelParams& params, const std::vector<MultiIndex>& unknowns,
                                      const SolveOptions& opt, std::mt19937_64& rng, SolveReport& report) {
  const int top = params.ell() * pair_count(params.n());
  std::vector<std::vector<std::size_t>> levels(static_cast<std::size_t>(top + 1));
  for (std::size_t j = 0; j < unknowns.size(); ++j) levels[static_cast<std::size_t>(degree(unknowns[j]))].push_back(j);
  std::size_t widest = 0;
  for (const auto& l : levels) widest = std::max(widest, l.size());
  const auto sample_count = static_cast<std::size_t>(std::ceil(static_cast<double>(widest) * (1.0 + opt.margin))) + 1;

  std::vector<BigRational> values(unknowns.size());
  values[levels[0].front()] = 1;
  for (int attempt = 0;; ++attempt) {
    // a[s][j], b[s][j] for every sample s and unknown j
    std::vector<std::vector<BigRational>> av(sample_count), bv(sample_count);
    for (std::size_t s = 0; s < sample_count; ++s) {
      const Geometry g(random_sample(params.n(), rng), params.ell());
      av[s].resize(unknowns.size());
      bv[s].resize(unknowns.size());
      for (std::size_t j = 0; j < unknowns.size(); ++j) laurent_parts(g, unknowns[j], av[s][j], bv[s][j]);
    }
    try {
      std::string method;
      for (int d = 1; d <= top; ++d) {
        const auto& cur = levels[static_cast<std::size_t>(d)];
        const auto& prev = levels[static_cast<std::size_t>(d - 1)];
        RationalMatrix a(sample_count, RationalRow(cur.size()));
        RationalRow b(sample_count);
        for (std::size_t s = 0; s < sample_count; ++s) {
          for (std::size_t c = 0; c < cur.size(); ++c) a[s][c] = av[s][cur[c]];
          BigRational rhs = 0;
          for (std::size_t j : prev)
            if (sgn(values[j]) != 0) rhs -= values[j] * bv[s][j];
          b[s] = std::move(rhs);
        }
        ExactSolution sol;
        try {
          sol = solve_exact(a, b, opt.method);
        } catch (const DegenerateSamplingError& e) {
          throw DegenerateSamplingError("degree " + std::to_string(d) + " block: " + e.what());
        }
        if (method.find(sol.method) == std::string::npos) method += (method.empty() ? "" : "+") + sol.method;
        for (std::size_t c = 0; c < cur.size(); ++c) values[cur[c]] = std::move(sol.x[c]);
        report.rows += sample_count;
      }
      for (std::size_t s = 0; s < sample_count; ++s) {
        BigRational acc = 0;
        for (std::size_t j : levels[static_cast<std::size_t>(top)]) acc += values[j] * bv[s][j];
        if (sgn(acc) != 0) throw NoSolutionError("top-degree residual does not vanish: ansatz space too small");
      }
      report.samples += sample_count;
      report.method = "graded-LaurentMonomial/" + method;
      return values;
    } catch (const DegenerateSamplingError&) {
      if (attempt >= 1) throw;
    }
  }
}

constexpr std::size_t kMaxDenseFallback = 1024;

}  // namespace

RationalSample random_sample(int n, std::mt19937_64& rng) {
  if (n < 1 || n > 19) throw DomainError("random_sample: need 1 <= N <= 19");
  std::vector<int> pool(19);
  std::iota(pool.begin(), pool.end(), -9);
  std::uniform_int_distribution<int> qd(1, 3);
  RationalSample s;
  for (auto* v : {&s.x, &s.p}) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const int q = qd(rng);
    for (int i = 0; i < n; ++i) v->push_back(make_rational(pool[static_cast<std::size_t>(i)], q));
  }
  return s;
}

std::vector<GaussRational> residual_row(const RationalSample& sample, const ModelParams& params, Representation basis,
                                        const std::vector<MultiIndex>& unknowns) {
  if (static_cast<int>(sample.x.size()) != params.n()) throw DomainError("sample size does not match N");
  const Geometry g(sample, params.ell());
  std::vector<GaussRational> row;
  row.reserve(unknowns.size());
  if (basis == Representation::LaurentMonomial) {
    for (const auto& m : unknowns) row.push_back(laurent_entry(g, m));
  } else {
    const ProductData pd(g);
    for (const auto& k : unknowns) row.push_back(product_entry(g, pd, k));
  }
  return row;
}

GaussRational table_residual(const CoefficientTable& table, const RationalSample& sample) {
  const Geometry g(sample, table.ell());
  GaussRational out;
  if (table.representation() == Representation::LaurentMonomial) {
    for (const auto& t : table.terms()) out += laurent_entry(g, t.index) * t.value;
  } else {
    const ProductData pd(g);
    for (const auto& t : table.terms()) out += product_entry(g, pd, t.index) * t.value;
  }
  return out;
}

GaussRational exact_correlation(const CoefficientTable& table, const RationalSample& sample) {
  const Geometry g(sample, table.ell());
  GaussRational out;
  if (table.representation() == Representation::LaurentMonomial) {
    for (const auto& t : table.terms()) {
      BigRational rm = t.value;
      for (std::size_t e = 0; e < g.slots(); ++e) rm *= g.r(e, t.index[e]);
      out += i_pow(degree(t.index), rm);
    }
  } else {
    const ProductData pd(g);
    for (const auto& t : table.terms()) {
      GaussRational p{t.value, 0};
      for (std::size_t e = 0; e < g.slots(); ++e) p *= pd.g0[e][t.index[e]];
      out += p;
    }
  }
  return out;
}

SolveReport solve_coefficients(const ModelParams& params, const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = params.n();
  const int ell = params.ell();
  const std::size_t count = multi_index_count(n, ell);
  if (count > kMaxOracleUnknowns) {
    throw SizeLimitError("oracle unknown space " + std::to_string(count) + " exceeds cap " +
                         std::to_string(kMaxOracleUnknowns));
  }
  const auto unknowns = all_multi_indices(n, ell);
  const Representation basis =
      options.basis.value_or(count <= 128 ? Representation::ProductOfF : Representation::LaurentMonomial);

  std::mt19937_64 rng(options.seed);
  SolveReport report{make_table(n, ell, Representation::ProductOfF, {}, {}),
                     make_table(n, ell, Representation::LaurentMonomial, {}, {}), 0, 0, 0, {}, false, 0.0};
  report.unknowns = count;

  std::vector<BigRational> values;
  if (count == 1) {
    values = {BigRational(1)};
    report.method = "trivial";
  } else if (basis == Representation::LaurentMonomial && options.graded) {
    try {
      values = graded_solve(params, unknowns, options, rng, report);
    } catch (const DegenerateSamplingError&) {
      // A singular degree block does not by itself make the full system singular.
      if (count > kMaxDenseFallback) throw;
      values = dense_solve(params, basis, unknowns, options, rng, report);
      report.method += " (graded fallback)";
    }
  } else {
    values = dense_solve(params, basis, unknowns, options, rng, report);
  }

  CoefficientTable solved = make_table(n, ell, basis, unknowns, values);
  if (basis == Representation::ProductOfF) {
    report.laurent = product_to_laurent(solved).with_status(TableStatus::Oracle);
    report.product = std::move(solved);
  } else {
    report.product = laurent_to_product(solved).with_status(TableStatus::Oracle);
    report.laurent = std::move(solved);
  }

  // Held-out sample drawn after all solve samples.
  const auto held = random_sample(n, rng);
  report.held_out_zero = table_residual(report.product, held).is_zero() && table_residual(report.laurent, held).is_zero();
  if (!report.held_out_zero) throw Error("oracle solution fails the held-out sample");
  report.seconds = elapsed(t0);
  return report;
}

VerifyReport verify_table(const CoefficientTable& table, const ModelParams& params, int trials, std::uint64_t seed) {
  check_table_params(table, params);
  if (trials < 1) throw DomainError("verify_table: trials must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  VerifyReport rep;
  rep.max_residual = 0;
  for (int t = 0; t < trials; ++t) {
    const auto r = table_residual(table, random_sample(params.n(), rng));
    rep.max_residual = std::max({rep.max_residual, BigRational(abs(r.re)), BigRational(abs(r.im))});
  }
  rep.trials = static_cast<std::size_t>(trials);
  rep.seconds = elapsed(t0);
  return rep;
}

}  // namespace calogero
