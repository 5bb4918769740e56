#pragma once

// One-dimensional rules and tensor-product grid descriptions.

#include <cstddef>
#include <string_view>
#include <vector>

namespace calogero {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
Rule1D gauss_legendre(int n);

/// `panels` equal panels on [a, b], each with an `order`-point Gauss-Legendre rule.
Rule1D composite_gauss_legendre(double a, double b, int panels, int order);

Rule1D midpoint_rule(double a, double b, int points);

enum class QuadratureRule { Midpoint, GaussLegendre };

std::string_view to_string(QuadratureRule r);
QuadratureRule parse_quadrature_rule(std::string_view s);

/// Largest total node count accepted for one integral.
inline constexpr std::size_t kMaxGridPoints = 10'000'000;

/// Per-axis panel order of composite Gauss-Legendre grids.
inline constexpr int kPanelOrder = 8;

/// Tensor-product grid: bounds and point count per axis.
struct QuadratureGrid {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> points;
  QuadratureRule rule = QuadratureRule::GaussLegendre;

  std::size_t dimension() const noexcept { return points.size(); }
  std::size_t total_points() const;
  /// Throws DomainError on inconsistent/invalid axes, SizeLimitError above kMaxGridPoints.
  void validate() const;
  /// Same bounds, points per axis scaled by `factor` (at least one panel).
  QuadratureGrid rescaled(double factor) const;
  /// Rule for one axis; Gauss-Legendre point counts are rounded up to whole panels.
  Rule1D axis_rule(std::size_t axis) const;
  std::size_t axis_rule_size(std::size_t axis) const;
};

}  // namespace calogero
