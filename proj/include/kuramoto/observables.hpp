#pragma once

#include <optional>
#include <vector>

#include "kuramoto/dynamics.hpp"
#include "kuramoto/graph.hpp"

namespace kuramoto {

struct ClassicOrderParameter {
  double magnitude = 0.0;
  double mean_phase = 0.0;  // in (-pi, pi]; 0 when degenerate
  bool degenerate = false;  // centroid at the origin, phase undefined
};

/// R e^{j psi} = (1/N) sum_i e^{j theta_i}.
ClassicOrderParameter order_parameter_classic(const Vec& theta);

/// Squared graph order parameter r^2 = (N^2 - 2e + 2 sum_edges cos phi) / N^2.
/// Coincides with R^2 exactly when g is complete.
double order_parameter_general(const OrientedGraph& g, const Vec& theta);

struct OrderParameterSample {
  double classic_r = 0.0;
  double mean_phase = 0.0;
  double general_r = 0.0;
};

OrderParameterSample sample_order_parameters(const OrientedGraph& g,
                                             const Vec& theta);

/// Sum over (undirected) edges of |e^{j theta_u} - e^{j theta_v}|^2.
/// Equals N^2 (1 - r^2) with r^2 the graph order parameter.
double disagreement(const OrientedGraph& g, const Vec& theta);

/// 1 - r^2 = (4/N^2) ||sin(B^T theta / 2)||^2.
double lyapunov_u1(const OrientedGraph& g, const Vec& theta);

/// theta^T (N I - 1 1^T) theta = N ||theta - mean||^2.
double lyapunov_u2(const Vec& theta);

/// True when the sufficient growth condition
/// ||B sin(B^T theta)||_2 > (N/K) ||Omega||_2 holds at theta, which
/// guarantees d(r^2)/dt > 0. False otherwise (sign undetermined); the
/// boundary, which contains the equilibria, reports false.
bool order_parameter_derivative_sign(const OrientedGraph& g, const Vec& omega,
                                     double coupling, const Vec& theta);

/// Asymptotic order-parameter ceiling sqrt(1 - ||Omega||_2^2 / (K^2 l2)).
/// nullopt is the "no information" marker, returned when
/// ||Omega||^2 / (K^2 l2) >= 1 and the expression leaves the reals.
std::optional<double> asymptotic_r_bound(const OrientedGraph& g,
                                         const Vec& omega, double coupling);

struct SyncVerdict {
  bool synchronized = false;
  double residual = 0.0;       // max tail phase-velocity disagreement
  double rate_estimate = 0.0;  // exponential contraction rate fit; 0 if n/a
};

/// Inspects the tail of a trace: synchronized when the grounded velocity
/// disagreement stays under residual_tol across the last tail_fraction of
/// samples. Rate is fit by least squares on the log-distance to the final
/// state, restricted to the middle 60% of the observed decay band.
SyncVerdict detect_sync(const OrientedGraph& g, const Vec& omega,
                        double coupling, const SimulationTrace& trace,
                        double tail_fraction = 0.2,
                        double residual_tol = 1e-7);

struct ObservableRow {
  double classic_r = 0.0;
  double mean_phase = 0.0;
  double r2 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

std::vector<ObservableRow> compute_observables(const OrientedGraph& g,
                                               const SimulationTrace& trace);

}  // namespace kuramoto
