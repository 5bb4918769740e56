#include "calogero/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

const Complex kI(0.0, 1.0);

// Fraction of a node spacing by which axis j is shifted, keeping nodes off y_i = y_j.
double jitter_fraction(std::size_t axis, std::size_t dims) {
  return (static_cast<double>(axis) + 0.5) / (2.0 * static_cast<double>(dims)) * 0.7639320225;
}

// Orthonormal Jacobi vectors spanning sum(xi) = 0: e_k = (1,..,1,-k,0,..)/sqrt(k(k+1)).
std::vector<std::vector<double>> jacobi_basis(int n) {
  std::vector<std::vector<double>> basis;
  for (int k = 1; k < n; ++k) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
    for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = 1.0 / norm;
    e[static_cast<std::size_t>(k)] = -k / norm;
    basis.push_back(std::move(e));
  }
  return basis;
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

bool equal_widths(const WavePacket& p) {
  return std::all_of(p.widths.begin(), p.widths.end(), [&](double w) { return w == p.widths.front(); });
}

// True when int K psi_0 may be replaced by int K phi (psi_0 is the matching projection of phi).
bool uses_factor(const WavePacket& p, const ModelParams& params) {
  return p.kind == WavePacket::Kind::GaussianProduct && (params.n() == 1 || p.exchange == statistics(params.ell()));
}

using Kernel = std::function<Complex(std::span<const double>, std::span<const double>)>;

Kernel make_kernel(const ModelParams& params, const TimeChart& chart, KernelRoute route) {
  if (route == KernelRoute::L0) {
    if (params.ell() != 0) throw DomainError("the l = 0 kernel route requires l = 0");
    return [chart](std::span<const double> x, std::span<const double> y) {
      std::array<Complex, kMaxPermutationSize> xc{}, yc{};
      for (std::size_t i = 0; i < x.size(); ++i) {
        xc[i] = x[i];
        yc[i] = y[i];
      }
      return kernel_l0(std::span<const Complex>(xc.data(), x.size()), std::span<const Complex>(yc.data(), y.size()),
                       chart);
    };
  }
  auto prop = std::make_shared<const Propagator>(params);
  return [prop, chart](std::span<const double> x, std::span<const double> y) { return (*prop)(x, y, chart); };
}

// Visits every node of a tensor grid with its weight.
template <class F>
void for_each_node(const std::vector<Rule1D>& rules, F&& f) {
  const std::size_t d = rules.size();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> point(d);
  while (true) {
    double w = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      point[a] = rules[a].nodes[idx[a]];
      w *= rules[a].weights[idx[a]];
    }
    f(std::span<const double>(point), w);
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (++idx[a] < rules[a].size()) break;
      idx[a] = 0;
      if (a == 0) return;
    }
    if (d == 0) return;
  }
}

std::vector<Rule1D> rules_of(const QuadratureGrid& g) {
  std::vector<Rule1D> rules;
  for (std::size_t a = 0; a < g.dimension(); ++a) rules.push_back(g.axis_rule(a));
  return rules;
}

std::vector<Complex> integrate_tensor(const WavePacket& packet, const ModelParams& params, const Kernel& kern,
                                      const std::vector<std::vector<double>>& outputs, const QuadratureGrid& grid) {
  const auto rules = rules_of(grid);
  const bool factor = uses_factor(packet, params);
  std::vector<Complex> weights_f;
  std::vector<std::vector<double>> nodes;
  for_each_node(rules, [&](std::span<const double> y, double w) {
    const Complex f = factor ? packet_factor(packet, y) : packet_value(packet, y);
    if (f == Complex(0.0)) return;
    weights_f.push_back(w * f);
    nodes.emplace_back(y.begin(), y.end());
  });
  std::vector<Complex> out;
  out.reserve(outputs.size());
  for (const auto& x : outputs) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) acc += kern(x, nodes[k]) * weights_f[k];
    out.push_back(acc);
  }
  return out;
}

// Centre-of-mass integral in closed form:
//   int dY exp(i N [Y^2 cot - 2 X Y / s]/2) exp(-N (Y-C)^2/(2w^2) + i K Y) = sqrt(pi/a) exp(b^2/(4a) - N C^2/(2w^2)),
//   a = N/(2w^2) - i N cot/2, b = N C/w^2 + i K - i N X/s.
Complex com_integral(double X, double C, double w, double K, int n, const TimeChart& c) {
  const double nn = n;
  const Complex a(nn / (2 * w * w), -nn * c.cot / 2);
  const Complex b(nn * C / (w * w), K - nn * X / c.s);
  return std::sqrt(std::numbers::pi / a) * std::exp(b * b / (4.0 * a) - nn * C * C / (2 * w * w));
}

std::vector<Complex> integrate_separated(const WavePacket& packet, const ModelParams& params, const Kernel& kern,
                                         const TimeChart& chart, const std::vector<std::vector<double>>& outputs,
                                         const QuadratureGrid& grid) {
  const int n = params.n();
  const auto un = static_cast<std::size_t>(n);
  const auto basis = jacobi_basis(n);
  const double w = packet.widths.front();
  const double C = mean(packet.centers);
  double K = 0.0;
  for (double k : packet.momenta) K += k;

  // relative nodes xi and weights times phi_rel(xi)
  std::vector<std::vector<double>> xis;
  std::vector<Complex> wf;
  for_each_node(rules_of(grid), [&](std::span<const double> eta, double wt) {
    std::vector<double> xi(un, 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t i = 0; i < un; ++i) xi[i] += eta[k] * basis[k][i];
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      const double d = xi[i] - (packet.centers[i] - C);
      re -= d * d / (2 * w * w);
      im += packet.momenta[i] * xi[i];
    }
    wf.push_back(wt * std::exp(Complex(re, im)));
    xis.push_back(std::move(xi));
  });

  std::vector<Complex> out;
  out.reserve(outputs.size());
  for (const auto& x : outputs) {
    Complex rel = 0.0;
    for (std::size_t k = 0; k < xis.size(); ++k) rel += kern(x, xis[k]) * wf[k];
    out.push_back(std::sqrt(static_cast<double>(n)) * com_integral(mean(x), C, w, K, n, chart) * rel);
  }
  return out;
}

int nodes_for(double length, double kmax, double phase_per_node) {
  const double n = std::ceil(length * kmax / phase_per_node);
  const int minimum = 12 * kPanelOrder;
  if (!(n < 1e8)) return 100'000'000;
  return std::max(minimum, static_cast<int>(n));
}

}  // namespace

std::string_view to_string(Exchange e) {
  switch (e) {
    case Exchange::None: return "none";
    case Exchange::Symmetric: return "symmetric";
    default: return "antisymmetric";
  }
}

Exchange parse_exchange(std::string_view s) {
  if (s == "none") return Exchange::None;
  if (s == "symmetric") return Exchange::Symmetric;
  if (s == "antisymmetric") return Exchange::Antisymmetric;
  throw DomainError("unknown exchange symmetry '" + std::string(s) + "'");
}

Exchange statistics(int ell) { return ell % 2 == 1 ? Exchange::Symmetric : Exchange::Antisymmetric; }

std::string_view to_string(IntegrationMethod m) {
  switch (m) {
    case IntegrationMethod::Auto: return "auto";
    case IntegrationMethod::Tensor: return "tensor";
    default: return "separated";
  }
}

WavePacket WavePacket::gaussian(std::vector<double> centers, std::vector<double> widths, std::vector<double> momenta,
                                Exchange exchange) {
  WavePacket p;
  p.kind = Kind::GaussianProduct;
  p.centers = std::move(centers);
  p.widths = std::move(widths);
  p.momenta = std::move(momenta);
  if (p.momenta.empty()) p.momenta.assign(p.centers.size(), 0.0);
  p.exchange = exchange;
  p.validate();
  return p;
}

WavePacket WavePacket::from_function(int n, std::function<Complex(std::span<const double>)> fn) {
  WavePacket p;
  p.kind = Kind::Custom;
  p.particles = n;
  p.custom = std::move(fn);
  p.validate();
  return p;
}

void WavePacket::validate() const {
  if (kind == Kind::Custom) {
    if (particles < 1 || !custom) throw DomainError("custom packet needs N >= 1 and a callable");
    return;
  }
  if (centers.empty()) throw DomainError("packet has no particles");
  if (widths.size() != centers.size() || momenta.size() != centers.size())
    throw DomainError("packet centers, widths and momenta differ in length");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!std::isfinite(centers[i]) || !std::isfinite(momenta[i])) throw DomainError("packet parameters must be finite");
    if (!(widths[i] > 0.0) || !std::isfinite(widths[i])) throw DomainError("packet widths must be positive");
  }
}

Complex packet_factor(const WavePacket& packet, std::span<const double> x) {
  if (packet.kind != WavePacket::Kind::GaussianProduct) throw DomainError("packet_factor needs a Gaussian packet");
  if (x.size() != packet.centers.size()) throw DomainError("packet_value: configuration length mismatch");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = (x[i] - packet.centers[i]) / packet.widths[i];
    re -= 0.5 * d * d;
    im += packet.momenta[i] * x[i];
  }
  return std::exp(Complex(re, im));
}

Complex packet_value(const WavePacket& packet, std::span<const double> x) {
  if (packet.kind == WavePacket::Kind::Custom) {
    if (static_cast<int>(x.size()) != packet.particles) throw DomainError("packet_value: configuration length mismatch");
    return packet.custom(x);
  }
  if (packet.exchange == Exchange::None) return packet_factor(packet, x);
  const int n = packet.n();
  std::array<double, kMaxPermutationSize> xt{};
  Complex sum = 0.0;
  for (const auto& tau : permutation_table(n)) {
    for (int i = 0; i < n; ++i) xt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(tau[i])];
    const double s = packet.exchange == Exchange::Antisymmetric ? tau.sign() : 1.0;
    sum += s * packet_factor(packet, std::span<const double>(xt.data(), x.size()));
  }
  return sum / factorial(n).get_d();
}

IntegrationMethod resolve_method(const WavePacket& packet, const ModelParams& params, IntegrationMethod requested) {
  const bool separable = packet.kind == WavePacket::Kind::GaussianProduct && params.n() >= 2 && equal_widths(packet) &&
                         uses_factor(packet, params);
  if (requested == IntegrationMethod::Separated && !separable) {
    throw DomainError("separated integration needs a Gaussian packet with equal widths, N >= 2 and "
                      "exchange symmetry matching the l-sector");
  }
  if (requested == IntegrationMethod::Auto) return separable ? IntegrationMethod::Separated : IntegrationMethod::Tensor;
  return requested;
}

QuadratureGrid default_grid(const WavePacket& packet, double t, const ModelParams& params,
                            const std::vector<std::vector<double>>& outputs, IntegrationMethod method,
                            double phase_per_node) {
  if (packet.kind != WavePacket::Kind::GaussianProduct)
    throw DomainError("custom packets need an explicit quadrature grid");
  const auto chart = TimeChart::make(t, params.omega());
  const int n = params.n();
  const auto un = static_cast<std::size_t>(n);
  QuadratureGrid g;
  g.rule = QuadratureRule::GaussLegendre;

  if (method == IntegrationMethod::Separated) {
    const auto basis = jacobi_basis(n);
    const double w = packet.widths.front();
    const double C = mean(packet.centers);
    double xrel = 0.0;  // largest |x - X 1| over outputs
    for (const auto& x : outputs) {
      const double X = mean(x);
      double r2 = 0.0;
      for (double v : x) r2 += (v - X) * (v - X);
      xrel = std::max(xrel, std::sqrt(r2));
    }
    for (const auto& e : basis) {
      double ec = 0.0, ek = 0.0;
      for (std::size_t i = 0; i < un; ++i) {
        ec += e[i] * (packet.centers[i] - C);
        ek += e[i] * packet.momenta[i];
      }
      const double lo = ec - 6 * w, hi = ec + 6 * w;
      const double kmax = std::abs(chart.cot) * std::max(std::abs(lo), std::abs(hi)) + xrel / std::abs(chart.s) +
                          std::abs(ek) + 2.0 / w;
      g.lower.push_back(lo);
      g.upper.push_back(hi);
      g.points.push_back(nodes_for(hi - lo, kmax, phase_per_node));
    }
  } else {
    const bool factor = uses_factor(packet, params);
    double xmax = 0.0;
    for (const auto& x : outputs)
      for (double v : x) xmax = std::max(xmax, std::abs(v));
    double cmin = packet.centers.front(), cmax = cmin, wmax = 0.0, kabs = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      cmin = std::min(cmin, packet.centers[i]);
      cmax = std::max(cmax, packet.centers[i]);
      wmax = std::max(wmax, packet.widths[i]);
      kabs = std::max(kabs, std::abs(packet.momenta[i]));
    }
    for (std::size_t j = 0; j < un; ++j) {
      const double w = factor ? packet.widths[j] : wmax;
      const double lo = factor ? packet.centers[j] - 6 * w : cmin - 6 * w;
      const double hi = factor ? packet.centers[j] + 6 * w : cmax + 6 * w;
      double kmax = 0.0;
      for (double y : {lo, hi}) kmax = std::max(kmax, std::abs(chart.cot * y) + xmax / std::abs(chart.s));
      kmax += (factor ? std::abs(packet.momenta[j]) : kabs) + 2.0 / w;
      g.lower.push_back(lo);
      g.upper.push_back(hi);
      g.points.push_back(nodes_for(hi - lo, kmax, phase_per_node));
    }
  }
  return g;
}

EvolveResult evolve(const WavePacket& packet, double t, const ModelParams& params,
                    const std::vector<std::vector<double>>& outputs, const EvolveOptions& options) {
  packet.validate();
  const int n = params.n();
  if (n > kMaxEvolutionParticles)
    throw SizeLimitError("evolution is limited to N <= " + std::to_string(kMaxEvolutionParticles));
  if (packet.n() != n) throw DomainError("packet particle number does not match N");
  for (const auto& x : outputs)
    if (static_cast<int>(x.size()) != n) throw DomainError("output configuration length does not match N");
  const auto chart = TimeChart::make(t, params.omega());
  const IntegrationMethod method = resolve_method(packet, params, options.method);

  QuadratureGrid grid = options.grid ? *options.grid : default_grid(packet, t, params, outputs, method, options.phase_per_node);
  const std::size_t dims = method == IntegrationMethod::Separated ? static_cast<std::size_t>(n - 1)
                                                                  : static_cast<std::size_t>(n);
  if (grid.dimension() != dims)
    throw DomainError("quadrature grid has " + std::to_string(grid.dimension()) + " axes, expected " + std::to_string(dims));
  grid.validate();
  // Shift axes by distinct fractions of a node spacing so no node lies on y_i = y_j.
  for (std::size_t a = 0; a < dims; ++a) {
    const double h = (grid.upper[a] - grid.lower[a]) / static_cast<double>(grid.axis_rule_size(a));
    const double shift = h * jitter_fraction(a, dims);
    grid.lower[a] += shift;
    grid.upper[a] += shift;
  }

  const Kernel kern = make_kernel(params, chart, options.route);
  auto run = [&](const QuadratureGrid& g) {
    return method == IntegrationMethod::Separated ? integrate_separated(packet, params, kern, chart, outputs, g)
                                                  : integrate_tensor(packet, params, kern, outputs, g);
  };

  EvolveResult res;
  res.method = method;
  res.values = run(grid);
  if (options.richardson) {
    const auto coarse = run(grid.rescaled(0.5));
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < res.values.size(); ++i) {
      diff = std::max(diff, std::abs(res.values[i] - coarse[i]));
      scale = std::max(scale, std::abs(res.values[i]));
    }
    res.error_estimate = scale > 0.0 ? diff / scale : diff;
    res.converged = res.error_estimate <= options.tolerance;
    if (!res.converged) {
      res.warnings.push_back("convergence: estimated relative quadrature error " + std::to_string(res.error_estimate) +
                             " exceeds tolerance " + std::to_string(options.tolerance));
    }
  }
  res.grid = std::move(grid);
  return res;
}

GridSamples grid_samples(const QuadratureGrid& grid) {
  grid.validate();
  GridSamples s;
  for_each_node(rules_of(grid), [&](std::span<const double> x, double w) {
    s.points.emplace_back(x.begin(), x.end());
    s.weights.push_back(w);
  });
  return s;
}

double weighted_norm(std::span<const Complex> values, std::span<const double> weights) {
  if (values.size() != weights.size()) throw DomainError("weighted_norm: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * std::norm(values[i]);
  return s;
}

NormReport evolve_norm(const WavePacket& packet, double t, const ModelParams& params, const QuadratureGrid& xgrid,
                       const EvolveOptions& options) {
  NormReport rep;
  rep.samples = grid_samples(xgrid);
  std::vector<Complex> initial;
  initial.reserve(rep.samples.points.size());
  for (const auto& x : rep.samples.points) initial.push_back(packet_value(packet, x));
  rep.evolution = evolve(packet, t, params, rep.samples.points, options);
  rep.norm_initial = weighted_norm(initial, rep.samples.weights);
  rep.norm_final = weighted_norm(rep.evolution.values, rep.samples.weights);
  rep.drift = std::abs(rep.norm_final / rep.norm_initial - 1.0);
  return rep;
}

}  // namespace calogero
