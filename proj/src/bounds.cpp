#include "kuramoto/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "kuramoto/dynamics.hpp"
#include "kuramoto/observables.hpp"
#include "kuramoto/rng.hpp"

namespace kuramoto {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClampMargin = 1e-6;
constexpr double kDivergedNorm = 1e6;

Vec centered(const Vec& omega) {
  return (omega.array() - omega.mean()).matrix();
}

/// B^T L^# Omega without forming B.
Vec edge_flow(const OrientedGraph& g, const Vec& omega_centered) {
  const Mat lpinv = pseudoinverse(g.laplacian());
  return g.phase_differences(lpinv * omega_centered);
}

}  // namespace

double bound_necessary_maxdeg(const OrientedGraph& g, const Vec& omega) {
  const Vec om = centered(omega);
  const double inf = om.size() > 0 ? om.cwiseAbs().maxCoeff() : 0.0;
  return g.n_vertices() * inf / g.max_degree();
}

double bound_necessary_pinv(const OrientedGraph& g, const Vec& omega) {
  const Vec om = centered(omega);
  const Vec flow = edge_flow(g, om);
  const double flow_inf = flow.size() > 0 ? flow.cwiseAbs().maxCoeff() : 0.0;
  const Mat b = g.incidence_matrix();
  const Mat projector = b.transpose() * pseudoinverse(g.laplacian()) * b;
  return g.n_vertices() * flow_inf / infinity_norm(projector);
}

std::optional<double> bound_tree_tight(const OrientedGraph& g,
                                       const Vec& omega) {
  if (!g.is_tree()) return std::nullopt;
  const Vec flow = edge_flow(g, centered(omega));
  const double flow_inf = flow.size() > 0 ? flow.cwiseAbs().maxCoeff() : 0.0;
  return g.n_vertices() * flow_inf;
}

double bound_sufficient_2norm(const OrientedGraph& g, const Vec& omega) {
  const Vec om = centered(omega);
  const auto spec = spectrum(g.laplacian());
  return 2.0 * std::sqrt(static_cast<double>(g.n_vertices())) * om.norm() /
         spec.lambda2;
}

double bound_contraction(const OrientedGraph& g, const Vec& omega) {
  const Vec om = centered(omega);
  const auto spec = spectrum(g.laplacian());
  return kPi * kPi / 4.0 * g.n_vertices() * spec.lambda_max * om.norm() /
         (spec.lambda2 * spec.lambda2);
}

double bound_sufficient_infnorm(const OrientedGraph& g, const Vec& omega,
                                int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  const Vec om = centered(omega);
  const double om_inf = om.size() > 0 ? om.cwiseAbs().maxCoeff() : 0.0;
  auto rng = make_rng(substream_seed(seed, 2));
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec theta =
        draw_uniform(g.n_vertices(), -kPi / 4.0, kPi / 4.0, rng);
    const WeightVector w =
        sinc_weights(PhaseDifferences(g.phase_differences(theta)));
    const Mat lw_pinv = pseudoinverse_shifted(g.weighted_laplacian(w));
    worst = std::max(worst, infinity_norm(lw_pinv));
  }
  return 4.0 / kPi * g.n_vertices() * worst * om_inf;
}

BoundReport bound_report(const OrientedGraph& g, const Vec& omega,
                         int infnorm_samples, std::uint64_t infnorm_seed) {
  BoundReport report;
  report.k_necessary_maxdeg = bound_necessary_maxdeg(g, omega);
  report.k_necessary_pinv = bound_necessary_pinv(g, omega);
  report.k_tree_tight = bound_tree_tight(g, omega);
  report.k_sufficient_2norm = bound_sufficient_2norm(g, omega);
  report.k_sufficient_infnorm_estimate =
      bound_sufficient_infnorm(g, omega, infnorm_samples, infnorm_seed);
  report.k_contraction = bound_contraction(g, omega);
  const auto spec = spectrum(g.laplacian());
  report.lambda2 = spec.lambda2;
  report.lambda_max = spec.lambda_max;
  return report;
}

std::string to_string(PicardStatus s) {
  switch (s) {
    case PicardStatus::converged:
      return "converged";
    case PicardStatus::stalled:
      return "stalled";
    case PicardStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

FixedPointResult solve_fixed_point(const OrientedGraph& g, const Vec& omega,
                                   double coupling, const Vec& theta_bar0,
                                   double tol, int max_iter) {
  if (!(coupling > 0.0)) throw std::invalid_argument("coupling must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const int n = g.n_vertices();
  if (n < 2) throw std::invalid_argument("need at least two oscillators");
  if (omega.size() != n) throw std::invalid_argument("omega dimension");
  if (theta_bar0.size() != n - 1) {
    throw std::invalid_argument("initial guess must have dimension N-1");
  }

  const GroundingProjection proj(n);
  const Vec om = centered(omega);
  const Vec om_grounded = proj.ground(om);
  const Mat vb = proj.matrix().transpose() * g.incidence_matrix();
  const double rhs_scale = static_cast<double>(n) / coupling;

  FixedPointResult result;
  Vec theta_bar = theta_bar0;
  PicardStatus status = PicardStatus::stalled;
  int iterations = 0;
  bool clamped = false;

  for (int it = 0; it < max_iter; ++it) {
    ++iterations;
    Vec phi = vb.transpose() * theta_bar;
    for (Eigen::Index j = 0; j < phi.size(); ++j) {
      const double bound = kPi - kClampMargin;
      if (std::abs(phi[j]) > bound) {
        phi[j] = std::clamp(phi[j], -bound, bound);
        clamped = true;
      }
    }
    Vec w(phi.size());
    for (Eigen::Index j = 0; j < phi.size(); ++j) w[j] = sinc(phi[j]);
    const Mat a = vb * w.asDiagonal() * vb.transpose();
    Eigen::LDLT<Mat> ldlt(a);
    if (ldlt.info() != Eigen::Success) {
      status = PicardStatus::diverged;
      break;
    }
    const Vec next = ldlt.solve(rhs_scale * om_grounded);
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kDivergedNorm) {
      status = PicardStatus::diverged;
      theta_bar = next.allFinite() ? next : theta_bar;
      break;
    }
    const double delta = (next - theta_bar).cwiseAbs().maxCoeff();
    theta_bar = next;
    const double residual =
        rhs_grounded(g, om, coupling, theta_bar, proj).cwiseAbs().maxCoeff();
    if (delta <= tol && residual <= 10.0 * tol) {
      status = PicardStatus::converged;
      break;
    }
  }

  result.iterations = iterations;
  result.status = status;
  result.converged = status == PicardStatus::converged;
  result.theta_star = proj.lift(theta_bar);
  result.phi_star = g.phase_differences(result.theta_star);
  result.residual =
      rhs_grounded(g, om, coupling, theta_bar, proj).cwiseAbs().maxCoeff();
  const double phi_inf = result.phi_star.size() > 0
                             ? result.phi_star.cwiseAbs().maxCoeff()
                             : 0.0;
  result.clamped = clamped;  // sticky: certification requires a clean run

  if (result.converged && !result.clamped && phi_inf < kPi / 2.0) {
    Vec cos_w(result.phi_star.size());
    for (Eigen::Index j = 0; j < cos_w.size(); ++j) {
      cos_w[j] = std::cos(result.phi_star[j]);
    }
    const Mat jac = vb * cos_w.asDiagonal() * vb.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(jac);
    result.certified_stable =
        es.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0;
  }
  result.certified_unique = result.converged && !result.clamped &&
                            coupling >= bound_contraction(g, omega);
  return result;
}

ThresholdResult empirical_threshold(const OrientedGraph& g, const Vec& omega,
                                    double k_lo, double k_hi, double tol_k) {
  if (!(k_lo >= 0.0) || !(k_hi > k_lo)) {
    throw std::invalid_argument("need 0 <= k_lo < k_hi");
  }
  if (!(tol_k > 0.0)) throw std::invalid_argument("tol_k must be positive");

  ThresholdResult result;
  const Vec om = centered(omega);
  if (om.cwiseAbs().maxCoeff() == 0.0) {
    result.k_hat = 0.0;  // identical oscillators lock at any coupling
    return result;
  }

  const auto spec = spectrum(g.laplacian());
  auto locked_at = [&](double k) -> bool {
    if (!(k > 0.0)) return false;
    auto fp = solve_fixed_point(g, om, k, Vec::Zero(g.n_vertices() - 1),
                                1e-10, 2000);
    if (fp.certified_stable) return true;
    // Fall back to forward integration; a certificate can be missed when
    // the locked state sits outside the contraction region of the solver.
    SimulationConfig cfg;
    cfg.coupling = k;
    cfg.step = 0.01;
    cfg.record_every = 10;
    cfg.t_end = std::clamp(
        40.0 * kPi * g.n_vertices() / (2.0 * k * spec.lambda2), 20.0, 2000.0);
    try {
      const auto trace =
          integrate(g, om, cfg, Vec::Zero(g.n_vertices()), Frame::full);
      return detect_sync(g, om, k, trace, 0.2, 1e-6).synchronized;
    } catch (const NumericalError&) {
      return false;
    }
  };

  auto probe = [&](double k) {
    const bool exists = locked_at(k);
    result.probes.push_back({k, exists});
    return exists;
  };

  if (!probe(k_hi)) {
    throw std::invalid_argument(
        "no locked state found at the top of the bracket; raise k_hi");
  }
  double hi = k_hi;
  double lo = k_lo;
  if (probe(k_lo)) {
    hi = k_lo;
  } else {
    while (hi - lo > tol_k) {
      const double mid = 0.5 * (lo + hi);
      if (probe(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  result.k_hat = hi;

  auto sorted = result.probes;
  std::sort(sorted.begin(), sorted.end(),
            [](const ThresholdProbe& a, const ThresholdProbe& b) {
              return a.coupling < b.coupling;
            });
  bool seen_locked = false;
  result.monotone = true;
  for (const auto& p : sorted) {
    if (seen_locked && !p.exists) result.monotone = false;
    if (p.exists) seen_locked = true;
  }
  return result;
}

std::pair<double, double> r_infinity_bracket(bool at_critical_coupling) {
  const double lower = std::sqrt(16.0 - kPi * kPi) / 4.0;
  const double upper = at_critical_coupling ? std::sqrt(3.0) / 2.0 : 1.0;
  return {lower, upper};
}

}  // namespace kuramoto
