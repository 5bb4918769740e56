#pragma once

// psi(x;t) = int K_N(x,y;t) psi_0(y) d^N y by quadrature, for N <= 3.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "calogero/propagator.hpp"
#include "calogero/quadrature.hpp"

namespace calogero {

/// Exchange symmetry imposed on a packet: psi_0 = (1/N!) sum_tau s_tau phi(y_tau) with
/// s_tau = 1 (Symmetric) or sign(tau) (Antisymmetric); None leaves phi as is.
enum class Exchange { None, Symmetric, Antisymmetric };

std::string_view to_string(Exchange e);
Exchange parse_exchange(std::string_view s);

/// Exchange symmetry of the l-sector: eps^{l+1} is symmetric for odd l.
Exchange statistics(int ell);

struct WavePacket {
  enum class Kind { GaussianProduct, Custom };

  Kind kind = Kind::GaussianProduct;
  /// phi(y) = prod_i exp(-(y_i - c_i)^2 / (2 w_i^2) + i k_i y_i)
  std::vector<double> centers;
  std::vector<double> widths;
  std::vector<double> momenta;
  Exchange exchange = Exchange::None;
  /// Custom kind: psi_0 itself (its symmetry is the caller's responsibility).
  std::function<Complex(std::span<const double>)> custom;
  int particles = 0;  // custom kind only

  static WavePacket gaussian(std::vector<double> centers, std::vector<double> widths, std::vector<double> momenta,
                             Exchange exchange);
  static WavePacket from_function(int n, std::function<Complex(std::span<const double>)> fn);

  int n() const { return kind == Kind::Custom ? particles : static_cast<int>(centers.size()); }
  void validate() const;
};

/// psi_0(x).
Complex packet_value(const WavePacket& packet, std::span<const double> x);

/// The unsymmetrized product phi(x) (Gaussian kind only).
Complex packet_factor(const WavePacket& packet, std::span<const double> x);

enum class KernelRoute { General, L0 };

enum class IntegrationMethod {
  Auto,       // Separated when applicable, else Tensor
  Tensor,     // N-dimensional grid over y
  Separated,  // closed-form centre-of-mass integral times an (N-1)-dimensional relative grid
};

std::string_view to_string(IntegrationMethod m);

inline constexpr int kMaxEvolutionParticles = 3;
inline constexpr double kDefaultPhasePerNode = 0.7853981633974483;  // pi/4

struct EvolveOptions {
  /// Integration grid (over y for Tensor, over relative Jacobi coordinates for Separated).
  /// Default: packet support +-6w per axis, nodes from the phase-advance rule.
  std::optional<QuadratureGrid> grid;
  KernelRoute route = KernelRoute::General;
  IntegrationMethod method = IntegrationMethod::Auto;
  double phase_per_node = kDefaultPhasePerNode;
  /// Relative error above which a convergence warning is raised.
  double tolerance = 1e-6;
  /// Also integrate on a half-resolution grid and report the difference.
  bool richardson = true;
};

struct EvolveResult {
  std::vector<Complex> values;
  /// max |I_n - I_{n/2}| / max |I_n| over outputs (0 when Richardson is off).
  double error_estimate = 0.0;
  bool converged = true;
  IntegrationMethod method = IntegrationMethod::Tensor;
  QuadratureGrid grid;
  std::vector<std::string> warnings;
};

/// Throws SizeLimitError for N > 3 or oversized grids, CausticError/DomainError for invalid t,
/// DomainError for inconsistent inputs.
EvolveResult evolve(const WavePacket& packet, double t, const ModelParams& params,
                    const std::vector<std::vector<double>>& outputs, const EvolveOptions& options = {});

/// Method that `evolve` selects for IntegrationMethod::Auto.
IntegrationMethod resolve_method(const WavePacket& packet, const ModelParams& params, IntegrationMethod requested);

/// Default integration grid for a resolved method (Tensor or Separated).
QuadratureGrid default_grid(const WavePacket& packet, double t, const ModelParams& params,
                            const std::vector<std::vector<double>>& outputs, IntegrationMethod method,
                            double phase_per_node = kDefaultPhasePerNode);

/// Tensor nodes and weights of a grid (output sampling and norms).
struct GridSamples {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
};
GridSamples grid_samples(const QuadratureGrid& grid);

/// sum_i w_i |v_i|^2
double weighted_norm(std::span<const Complex> values, std::span<const double> weights);

struct NormReport {
  double norm_initial = 0.0;
  double norm_final = 0.0;
  double drift = 0.0;  // |norm_final / norm_initial - 1|
  EvolveResult evolution;
  GridSamples samples;
};

/// Evolves onto the nodes of `xgrid` and compares int |psi(t)|^2 with int |psi_0|^2 on that grid.
NormReport evolve_norm(const WavePacket& packet, double t, const ModelParams& params, const QuadratureGrid& xgrid,
                       const EvolveOptions& options = {});

}  // namespace calogero
