#include "calogero/propagator.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

const Complex kI(0.0, 1.0);

void check_point(std::size_t x, std::size_t y, int n) {
  if (x != static_cast<std::size_t>(n) || y != static_cast<std::size_t>(n))
    throw DomainError("kernel point length does not match N=" + std::to_string(n));
}

template <class T>
Complex mehler_impl(T x, T y, const TimeChart& c) {
  const Complex phase = (Complex(x * x + y * y) * c.cot - 2.0 * Complex(x * y) / c.s) * 0.5;
  return std::exp(kI * phase) / c.root;
}

template <class T>
Complex kernel_l0_impl(std::span<const T> x, std::span<const T> y, const TimeChart& c) {
  const int n = static_cast<int>(x.size());
  if (y.size() != x.size()) throw DomainError("kernel_l0: x and y lengths differ");
  const auto un = static_cast<std::size_t>(n);
  // table[i][j] = K_1(x_j, y_i)
  std::vector<Complex> k1(un * un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) k1[i * un + j] = mehler_impl<T>(x[j], y[i], c);
  Complex sum = 0.0;
  for (const auto& sigma : permutation_table(n)) {
    Complex term = static_cast<double>(sigma.sign());
    for (std::size_t i = 0; i < un; ++i) term *= k1[i * un + static_cast<std::size_t>(sigma[static_cast<int>(i)])];
    sum += term;
  }
  return sum / factorial(n).get_d();
}

std::string caustic_message(double t, double omega) {
  std::ostringstream os;
  os.precision(17);
  os << "caustic at t=" << t << " (omega=" << omega << "): sin(omega t) vanishes";
  return os.str();
}

}  // namespace

TimeChart TimeChart::make(double t, double omega) {
  if (!std::isfinite(t) || !std::isfinite(omega) || omega < 0.0) throw DomainError("time and frequency must be finite, omega >= 0");
  if (t == 0.0) throw CausticError("caustic at t=0: the kernel is a delta distribution", t);
  TimeChart c;
  c.t = t;
  c.omega = omega;
  if (omega == 0.0) {
    c.s = t;
    c.cot = 1.0 / t;
  } else {
    const double wt = omega * t;
    if (std::abs(wt) >= std::numbers::pi) {
      if (std::abs(std::sin(wt)) < kCausticGuard) throw CausticError(caustic_message(t, omega), t);
      throw DomainError("t outside the first caustic window |omega t| < pi");
    }
    const double sn = std::sin(wt);
    if (std::abs(sn) < kCausticGuard) throw CausticError(caustic_message(t, omega), t);
    c.s = sn / omega;
    c.cot = omega * std::cos(wt) / sn;
  }
  c.root = std::sqrt(Complex(0.0, 2.0 * std::numbers::pi * c.s));
  return c;
}

Complex mehler(double x, double y, double t, double omega) { return mehler_impl<double>(x, y, TimeChart::make(t, omega)); }

Complex mehler(Complex x, Complex y, const TimeChart& chart) { return mehler_impl<Complex>(x, y, chart); }

std::vector<double> effective_momentum(std::span<const double> y, double t, double omega) {
  const auto c = TimeChart::make(t, omega);
  std::vector<double> p(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) p[i] = -y[i] / c.s;
  return p;
}

Propagator::Propagator(ModelParams params, std::shared_ptr<const CoefficientTable> table)
    : wavefunction_(std::move(params), std::move(table)) {}

Complex Propagator::operator()(std::span<const double> x, std::span<const double> y, double t,
                               EvalDiagnostics* diag) const {
  return (*this)(x, y, TimeChart::make(t, params().omega()), diag);
}

Complex Propagator::operator()(std::span<const double> x, std::span<const double> y, const TimeChart& chart,
                               EvalDiagnostics* diag) const {
  const int n = params().n();
  check_point(x.size(), y.size(), n);
  std::array<double, kMaxPermutationSize> p{};
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = -y[i] / chart.s;
    r2 += x[i] * x[i] + y[i] * y[i];
  }
  const Complex psi = wavefunction_(x, std::span<const double>(p.data(), x.size()), diag);
  return std::exp(kI * (0.5 * chart.cot * r2)) / std::pow(chart.root, n) * psi;
}

Complex Propagator::operator()(std::span<const Complex> x, std::span<const Complex> y, const TimeChart& chart,
                               EvalDiagnostics* diag) const {
  const int n = params().n();
  check_point(x.size(), y.size(), n);
  std::array<Complex, kMaxPermutationSize> p{};
  Complex r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = -y[i] / chart.s;
    r2 += x[i] * x[i] + y[i] * y[i];
  }
  const Complex psi = wavefunction_(x, std::span<const Complex>(p.data(), x.size()), diag);
  return std::exp(kI * (0.5 * chart.cot * r2)) / std::pow(chart.root, n) * psi;
}

Complex kernel(std::span<const double> x, std::span<const double> y, double t, const ModelParams& params,
               EvalDiagnostics* diag) {
  return Propagator(params)(x, y, t, diag);
}

Complex kernel_l0(std::span<const double> x, std::span<const double> y, double t, double omega) {
  return kernel_l0_impl<double>(x, y, TimeChart::make(t, omega));
}

Complex kernel_l0(std::span<const Complex> x, std::span<const Complex> y, const TimeChart& chart) {
  return kernel_l0_impl<Complex>(x, y, chart);
}

Complex kernel_explicit(std::span<const double> x, std::span<const double> y, double t, const ModelParams& params,
                        const CoefficientTable& table) {
  const int n = params.n();
  check_point(x.size(), y.size(), n);
  if (table.n() != n || table.ell() != params.ell()) throw DomainError("table (N, l) does not match model parameters");
  const CoefficientTable laurent =
      table.representation() == Representation::LaurentMonomial ? table : product_to_laurent(table);
  const auto c = TimeChart::make(t, params.omega());
  const auto un = static_cast<std::size_t>(n);
  const auto pairs = pair_indices(n);
  const int width = params.ell() + 1;

  std::vector<Complex> k1(un * un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) k1[i * un + j] = mehler_impl<double>(x[j], y[i], c);

  // powers[e * width + a] = w_e^a with w_e = -i s / (dx_e dy_e)
  std::vector<Complex> powers(pairs.size() * static_cast<std::size_t>(width));
  Complex sum = 0.0;
  for (const auto& sigma : permutation_table(n)) {
    Complex plane = static_cast<double>(params.exchange_sign(sigma.sign()));
    for (std::size_t i = 0; i < un; ++i) plane *= k1[i * un + static_cast<std::size_t>(sigma[static_cast<int>(i)])];
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const double dx = x[static_cast<std::size_t>(sigma[pairs[e].i])] - x[static_cast<std::size_t>(sigma[pairs[e].j])];
      const double dy = y[static_cast<std::size_t>(pairs[e].i)] - y[static_cast<std::size_t>(pairs[e].j)];
      Complex w = 0.0;
      if (params.ell() > 0) {
        if (dx == 0.0 || dy == 0.0) throw SingularityError("kernel_explicit at coincident coordinates");
        w = Complex(0.0, -c.s / (dx * dy));
      }
      Complex pw = 1.0;
      for (int a = 0; a < width; ++a) {
        powers[e * static_cast<std::size_t>(width) + static_cast<std::size_t>(a)] = pw;
        pw *= w;
      }
    }
    Complex corr = 0.0;
    for (const auto& term : laurent.terms()) {
      Complex v = term.value.get_d();
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (term.index[e]) v *= powers[e * static_cast<std::size_t>(width) + term.index[e]];
      corr += v;
    }
    sum += plane * corr;
  }
  return sum / factorial(n).get_d();
}

Complex free_kernel(std::span<const double> x, std::span<const double> y, double t, const ModelParams& params) {
  const int n = params.n();
  check_point(x.size(), y.size(), n);
  if (t == 0.0 || !std::isfinite(t)) throw DomainError("free_kernel requires finite t != 0");
  const Complex root = std::sqrt(Complex(0.0, 2.0 * std::numbers::pi * t));
  Complex sum = 0.0;
  for (const auto& sigma : permutation_table(n)) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[static_cast<std::size_t>(sigma[static_cast<int>(i)])] - y[i];
      phase += d * d;
    }
    sum += static_cast<double>(params.exchange_sign(sigma.sign())) * std::polar(1.0, phase / (2.0 * t));
  }
  return sum / factorial(n).get_d() / std::pow(root, n);
}

}  // namespace calogero
