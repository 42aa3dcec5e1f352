#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kuramoto/graph.hpp"
#include "kuramoto/spectral.hpp"

namespace kuramoto {

/// All bounds center omega internally (only the mean-zero part matters for
/// phase locking; the mean is a rigid rotation).

/// N ||Omega||_inf / d_max. Coupling below this cannot lock.
double bound_necessary_maxdeg(const OrientedGraph& g, const Vec& omega);

/// N ||B^T L^# Omega||_inf / ||B^T L^# B||_inf. Coupling below this cannot
/// lock; on trees the divisor is 1 and the bound is exact.
double bound_necessary_pinv(const OrientedGraph& g, const Vec& omega);

/// Exact locking threshold N ||B^T L^# Omega||_inf for trees.
/// nullopt when g has a cycle.
std::optional<double> bound_tree_tight(const OrientedGraph& g,
                                       const Vec& omega);

/// 2 sqrt(N) ||Omega||_2 / lambda2. Coupling above this locks with all
/// pairwise phase differences inside (-pi/2, pi/2).
double bound_sufficient_2norm(const OrientedGraph& g, const Vec& omega);

/// (pi^2 / 4) N lambda_max ||Omega||_2 / lambda2^2. Above this the locked
/// state is additionally unique in the contraction region.
double bound_contraction(const OrientedGraph& g, const Vec& omega);

/// (4/pi) N ||Omega||_inf max_theta ||L_W(theta)^#||_inf, the max estimated
/// by seeded sampling of theta in (-pi/4, pi/4)^N.
double bound_sufficient_infnorm(const OrientedGraph& g, const Vec& omega,
                                int samples = 1000, std::uint64_t seed = 0);

struct BoundReport {
  double k_necessary_maxdeg = 0.0;
  double k_necessary_pinv = 0.0;
  std::optional<double> k_tree_tight;
  double k_sufficient_2norm = 0.0;
  double k_sufficient_infnorm_estimate = 0.0;
  double k_contraction = 0.0;
  double lambda2 = 0.0;
  double lambda_max = 0.0;
};

BoundReport bound_report(const OrientedGraph& g, const Vec& omega,
                         int infnorm_samples = 1000,
                         std::uint64_t infnorm_seed = 0);

enum class PicardStatus { converged, stalled, diverged };
std::string to_string(PicardStatus s);

struct FixedPointResult {
  Vec theta_star;            // full coordinates, mean zero
  Vec phi_star;              // edge phase differences B^T theta_star
  double residual = 0.0;     // ||grounded rhs at theta_star||_inf
  int iterations = 0;
  PicardStatus status = PicardStatus::stalled;
  bool converged = false;
  bool clamped = false;          // an edge difference hit the +-pi guard
  bool certified_stable = false; // all |phi*| < pi/2 and grounded Jacobian spd
  bool certified_unique = false; // coupling clears the contraction bound
};

/// Picard iteration for the locked state: repeatedly solve the weighted
/// grounded Laplacian system with sinc weights frozen at the current iterate.
FixedPointResult solve_fixed_point(const OrientedGraph& g, const Vec& omega,
                                   double coupling, const Vec& theta_bar0,
                                   double tol = 1e-10, int max_iter = 500);

struct ThresholdProbe {
  double coupling = 0.0;
  bool exists = false;
};

struct ThresholdResult {
  double k_hat = 0.0;
  bool monotone = true;  // probe outcomes consistent with a single threshold
  std::vector<ThresholdProbe> probes;
};

/// Bisection for the smallest coupling with a certified locked state.
/// Returns the final upper probe, so k_hat always admits a locked state.
ThresholdResult empirical_threshold(const OrientedGraph& g, const Vec& omega,
                                    double k_lo, double k_hi, double tol_k);

/// [lower, upper] envelope for the asymptotic order parameter of a locked
/// state: lower = sqrt(16 - pi^2)/4 always; upper = sqrt(3)/2 exactly at the
/// critical coupling, 1 otherwise.
std::pair<double, double> r_infinity_bracket(bool at_critical_coupling);

}  // namespace kuramoto
