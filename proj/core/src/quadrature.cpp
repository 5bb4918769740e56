#include "calogero/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"

namespace calogero {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  Rule1D r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -z;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

Rule1D composite_gauss_legendre(double a, double b, int panels, int order) {
  if (!(b > a) || panels < 1) throw DomainError("composite_gauss_legendre: need a < b and panels >= 1");
  const Rule1D base = gauss_legendre(order);
  const double h = (b - a) / panels;
  Rule1D r;
  r.nodes.reserve(static_cast<std::size_t>(panels) * base.size());
  r.weights.reserve(r.nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < base.size(); ++k) {
      r.nodes.push_back(mid + 0.5 * h * base.nodes[k]);
      r.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  return r;
}

Rule1D midpoint_rule(double a, double b, int points) {
  if (!(b > a) || points < 1) throw DomainError("midpoint_rule: need a < b and points >= 1");
  const double h = (b - a) / points;
  Rule1D r;
  for (int i = 0; i < points; ++i) {
    r.nodes.push_back(a + (i + 0.5) * h);
    r.weights.push_back(h);
  }
  return r;
}

std::string_view to_string(QuadratureRule r) { return r == QuadratureRule::Midpoint ? "midpoint" : "gauss-legendre"; }

QuadratureRule parse_quadrature_rule(std::string_view s) {
  if (s == "midpoint") return QuadratureRule::Midpoint;
  if (s == "gauss-legendre" || s == "gl") return QuadratureRule::GaussLegendre;
  throw DomainError("unknown quadrature rule '" + std::string(s) + "'");
}

std::size_t QuadratureGrid::total_points() const {
  std::size_t total = 1;
  for (std::size_t a = 0; a < points.size(); ++a) {
    const auto n = axis_rule_size(a);
    if (n != 0 && total > kMaxGridPoints * 16 / n) return kMaxGridPoints * 16;  // saturate
    total *= n;
  }
  return total;
}

std::size_t QuadratureGrid::axis_rule_size(std::size_t axis) const {
  const int n = std::max(points[axis], 1);
  if (rule == QuadratureRule::Midpoint) return static_cast<std::size_t>(n);
  return static_cast<std::size_t>((n + kPanelOrder - 1) / kPanelOrder * kPanelOrder);
}

void QuadratureGrid::validate() const {
  if (points.empty()) throw DomainError("quadrature grid has no axes");
  if (lower.size() != points.size() || upper.size() != points.size())
    throw DomainError("quadrature grid: bounds and point counts differ in length");
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]) || !(upper[a] > lower[a]))
      throw DomainError("quadrature grid: axis " + std::to_string(a) + " needs finite lower < upper");
    if (points[a] < 1) throw DomainError("quadrature grid: point counts must be positive");
  }
  if (total_points() > kMaxGridPoints)
    throw SizeLimitError("quadrature grid exceeds " + std::to_string(kMaxGridPoints) + " points");
}

QuadratureGrid QuadratureGrid::rescaled(double factor) const {
  QuadratureGrid g = *this;
  for (auto& p : g.points) p = std::max(rule == QuadratureRule::GaussLegendre ? kPanelOrder : 1,
                                        static_cast<int>(std::lround(p * factor)));
  return g;
}

Rule1D QuadratureGrid::axis_rule(std::size_t axis) const {
  if (rule == QuadratureRule::Midpoint) return midpoint_rule(lower[axis], upper[axis], points[axis]);
  const int panels = static_cast<int>(axis_rule_size(axis)) / kPanelOrder;
  return composite_gauss_legendre(lower[axis], upper[axis], panels, kPanelOrder);
}

}  // namespace calogero
