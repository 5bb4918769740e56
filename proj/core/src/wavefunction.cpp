#include "calogero/wavefunction.hpp"

#include <array>
#include <cmath>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

constexpr std::size_t kMaxSlots = static_cast<std::size_t>(pair_count(kMaxPermutationSize));

const Complex kI(0.0, 1.0);

Complex expi(Complex phase) { return std::exp(kI * phase); }

void check_sizes(std::size_t x, std::size_t p, int n) {
  if (x != static_cast<std::size_t>(n) || p != static_cast<std::size_t>(n)) {
    throw DomainError("configuration/momentum length does not match N=" + std::to_string(n));
  }
}

}  // namespace

ModelParams::ModelParams(int n, int ell, double omega) : n_(n), ell_(ell), omega_(omega) {
  if (n < 1 || n > kMaxPermutationSize) {
    throw SizeLimitError("particle number N=" + std::to_string(n) + " outside 1.." +
                         std::to_string(kMaxPermutationSize));
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("trap frequency must be finite and >= 0");
  polynomials_ = TwoBodyPolynomials::get(ell);
}

Complex pair_variable(std::span<const double> x, std::span<const double> p, PairIndex pair) {
  const auto i = static_cast<std::size_t>(pair.i);
  const auto j = static_cast<std::size_t>(pair.j);
  return Complex(0.0, -(p[i] - p[j]) * (x[i] - x[j]));
}

Complex pair_variable(std::span<const Complex> x, std::span<const Complex> p, PairIndex pair) {
  const auto i = static_cast<std::size_t>(pair.i);
  const auto j = static_cast<std::size_t>(pair.j);
  return -kI * (p[i] - p[j]) * (x[i] - x[j]);
}

CorrelationFactor::CorrelationFactor(const CoefficientTable& table)
    : n_(table.n()),
      ell_(table.ell()),
      slots_(table.slots()),
      representation_(table.representation()),
      polynomials_(TwoBodyPolynomials::get(table.ell())) {
  if (static_cast<std::size_t>(slots_) > kMaxSlots) throw SizeLimitError("correlation factor: N too large");
  exponents_.reserve(table.size() * static_cast<std::size_t>(slots_));
  values_.reserve(table.size());
  for (const auto& [m, v] : table.terms()) {
    exponents_.insert(exponents_.end(), m.begin(), m.end());
    values_.push_back(v.get_d());
  }
}

Complex CorrelationFactor::evaluate(std::span<const Complex> pair_vars) const {
  const auto slots = static_cast<std::size_t>(slots_);
  if (pair_vars.size() != slots) throw DomainError("correlation factor: wrong number of pair variables");
  const auto width = static_cast<std::size_t>(ell_ + 1);
  // table[s * width + a]: (1/X_s)^a for Laurent monomials, F_a(X_s) for products.
  std::array<Complex, kMaxSlots * (kMaxEll + 1)> table{};
  if (ell_ > 0) {
    for (std::size_t s = 0; s < slots; ++s) {
      if (pair_vars[s] == Complex(0.0)) throw SingularityError("correlation factor at coincident pair");
      if (representation_ == Representation::LaurentMonomial) {
        const Complex inv = 1.0 / pair_vars[s];
        Complex power = 1.0;
        for (std::size_t a = 0; a < width; ++a) {
          table[s * width + a] = power;
          power *= inv;
        }
      } else {
        polynomials_->evaluate_all(pair_vars[s], std::span<Complex>(&table[s * width], width));
      }
    }
  } else {
    for (std::size_t s = 0; s < slots; ++s) table[s] = 1.0;
  }
  Complex sum = 0.0;
  const std::uint8_t* e = exponents_.data();
  for (double v : values_) {
    Complex term = v;
    for (std::size_t s = 0; s < slots; ++s, ++e) {
      if (*e) term *= table[s * width + *e];
      else if (representation_ == Representation::ProductOfF) term *= table[s * width];
    }
    sum += term;
  }
  return sum;
}

Wavefunction::Wavefunction(ModelParams params, std::shared_ptr<const CoefficientTable> table)
    : params_(std::move(params)), table_(std::move(table)) {
  if (!table_) {
    table_ = closed_form_laurent_table(params_.n(), params_.ell());
    if (!table_) {
      throw DomainError("no closed-form coefficient table for N=" + std::to_string(params_.n()) +
                        ", l=" + std::to_string(params_.ell()) + "; supply an oracle-solved table");
    }
  }
  if (table_->n() != params_.n() || table_->ell() != params_.ell()) {
    throw DomainError("coefficient table (N, l) does not match model parameters");
  }
  factor_ = std::make_shared<const CorrelationFactor>(*table_);
}

Complex Wavefunction::correlation(std::span<const double> x, std::span<const double> p) const {
  std::array<Complex, kMaxPermutationSize> xc{};
  std::array<Complex, kMaxPermutationSize> pc{};
  check_sizes(x.size(), p.size(), params_.n());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xc[i] = x[i];
    pc[i] = p[i];
  }
  return correlation(std::span<const Complex>(xc.data(), x.size()), std::span<const Complex>(pc.data(), p.size()));
}

Complex Wavefunction::correlation(std::span<const Complex> x, std::span<const Complex> p) const {
  const int n = params_.n();
  check_sizes(x.size(), p.size(), n);
  std::array<Complex, kMaxSlots> vars{};
  std::size_t s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) vars[s++] = pair_variable(x, p, {i, j});
  return factor_->evaluate(std::span<const Complex>(vars.data(), s));
}

Complex Wavefunction::operator()(std::span<const double> x, std::span<const double> p, EvalDiagnostics* diag) const {
  check_sizes(x.size(), p.size(), params_.n());
  std::array<Complex, kMaxPermutationSize> xc{};
  std::array<Complex, kMaxPermutationSize> pc{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    xc[i] = x[i];
    pc[i] = p[i];
  }
  return (*this)(std::span<const Complex>(xc.data(), x.size()), std::span<const Complex>(pc.data(), p.size()), diag);
}

Complex Wavefunction::operator()(std::span<const Complex> x, std::span<const Complex> p, EvalDiagnostics* diag) const {
  const int n = params_.n();
  check_sizes(x.size(), p.size(), n);
  const auto un = static_cast<std::size_t>(n);

  // Coincidence scan: the permutation sum only permutes x, so the set of pair scales is fixed.
  double min_scale = std::numeric_limits<double>::infinity();
  bool coincident = false;
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = i + 1; j < un; ++j) {
      const double dx = std::abs(x[i] - x[j]);
      const double dp = std::abs(p[i] - p[j]);
      if (dx == 0.0 || dp == 0.0) coincident = true;
      min_scale = std::min(min_scale, dx * dp);
    }
  }
  if (diag) {
    diag->min_pair_scale = std::min(diag->min_pair_scale, min_scale);
    diag->accuracy_warning = diag->accuracy_warning || min_scale < kMinPairSeparation;
    diag->coincident = diag->coincident || coincident;
  }
  if (coincident) return 0.0;

  std::array<Complex, kMaxSlots> vars{};
  std::array<Complex, kMaxPermutationSize> xs{};
  Complex sum = 0.0;
  for (const auto& sigma : permutation_table(n)) {
    Complex phase = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      xs[i] = x[static_cast<std::size_t>(sigma[static_cast<int>(i)])];
      phase += p[i] * xs[i];
    }
    std::size_t s = 0;
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j) vars[s++] = -kI * (p[i] - p[j]) * (xs[i] - xs[j]);
    const Complex f = factor_->evaluate(std::span<const Complex>(vars.data(), s));
    sum += static_cast<double>(params_.exchange_sign(sigma.sign())) * f * expi(phase);
  }
  return sum / factorial(n).get_d();
}

Complex script_f(std::span<const double> x, std::span<const double> p, const ModelParams& params,
                 const CoefficientTable& table) {
  return Wavefunction(params, std::make_shared<const CoefficientTable>(table)).correlation(x, p);
}

Complex psi(std::span<const double> x, std::span<const double> p, const ModelParams& params, EvalDiagnostics* diag) {
  return Wavefunction(params)(x, p, diag);
}

Complex psi2_bessel(std::span<const double> x, std::span<const double> p, int ell) {
  if (x.size() != 2 || p.size() != 2) throw DomainError("psi2_bessel requires N = 2");
  const double z = 0.5 * (p[0] - p[1]) * (x[0] - x[1]);
  const double com_phase = 0.5 * (x[0] + x[1]) * (p[0] + p[1]);
  static constexpr std::array<Complex, 4> kIPowers{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  const Complex prefactor = kIPowers[static_cast<std::size_t>((ell + 1) % 4)];
  return std::polar(1.0, com_phase) * prefactor * (z * spherical_bessel_j(ell, z));
}

double vandermonde(std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
  return v;
}

}  // namespace calogero
