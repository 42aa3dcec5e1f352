#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kuramoto/graph.hpp"
#include "kuramoto/spectral.hpp"

namespace kuramoto {

/// Raised when an integration or solve leaves the representable regime
/// (non-finite state, blow-up past the guard threshold).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct SimulationConfig {
  double coupling = 1.0;
  double step = 0.01;
  double t_end = 1.0;
  int record_every = 1;

  /// Throws std::invalid_argument on non-positive step/t_end/record_every
  /// or non-finite coupling.
  void validate() const;
};

struct SimulationTrace {
  std::vector<double> times;
  std::vector<Vec> states;

  int size() const { return static_cast<int>(times.size()); }
};

enum class Frame { full, grounded };

/// omega - (K/N) B sin(B^T theta), the full-coordinate vector field.
Vec rhs_full(const OrientedGraph& g, const Vec& omega, double coupling,
             const Vec& theta);

/// Jacobian-free linearization around 0: omega - (K/N) L theta.
Vec rhs_linearized(const OrientedGraph& g, const Vec& omega, double coupling,
                   const Vec& theta);

/// Grounded vector field: V^T rhs_full(V theta_bar) with omega mean-centered.
Vec rhs_grounded(const OrientedGraph& g, const Vec& omega, double coupling,
                 const Vec& theta_bar, const GroundingProjection& proj);

/// Splits omega into (mean-zero part, mean).
std::pair<Vec, double> center_frequencies(const Vec& omega);

/// Classic fourth-order Runge-Kutta with fixed step. Records every
/// cfg.record_every steps plus the final state. In grounded mode the state
/// vector has dimension N-1 and omega is centered internally.
SimulationTrace integrate(const OrientedGraph& g, const Vec& omega,
                          const SimulationConfig& cfg, const Vec& theta0,
                          Frame frame = Frame::full);

/// Maps an angle into (-pi, pi].
double wrap_angle(double a);
Vec wrap_angles(const Vec& a);

/// Horizon heuristic: long enough for the slowest grounded mode to contract
/// by many decades at coupling K on a graph with algebraic connectivity l2.
double default_t_end(double coupling, int n, double lambda2);

}  // namespace kuramoto
