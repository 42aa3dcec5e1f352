#include "kuramoto/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "kuramoto/spectral.hpp"

namespace kuramoto {

ClassicOrderParameter order_parameter_classic(const Vec& theta) {
  const auto n = theta.size();
  if (n < 1) throw std::invalid_argument("empty state");
  const double re = theta.array().cos().mean();
  const double im = theta.array().sin().mean();
  ClassicOrderParameter out;
  out.magnitude = std::hypot(re, im);
  if (out.magnitude <= 1e-12) {
    out.degenerate = true;
    out.mean_phase = 0.0;
  } else {
    out.mean_phase = std::atan2(im, re);
    if (out.mean_phase <= -3.14159265358979323846) {
      out.mean_phase = 3.14159265358979323846;
    }
  }
  return out;
}

double order_parameter_general(const OrientedGraph& g, const Vec& theta) {
  const double n = g.n_vertices();
  const Vec phi = g.phase_differences(theta);
  const double cos_sum = phi.array().cos().sum();
  return (n * n - 2.0 * g.n_edges() + 2.0 * cos_sum) / (n * n);
}

OrderParameterSample sample_order_parameters(const OrientedGraph& g,
                                             const Vec& theta) {
  const auto classic = order_parameter_classic(theta);
  OrderParameterSample out;
  out.classic_r = classic.magnitude;
  out.mean_phase = classic.mean_phase;
  const double r2 = order_parameter_general(g, theta);
  out.general_r = r2 > 0.0 ? std::sqrt(r2) : 0.0;
  return out;
}

double disagreement(const OrientedGraph& g, const Vec& theta) {
  const Vec phi = g.phase_differences(theta);
  // |e^{ja} - e^{jb}|^2 = 2 (1 - cos(a - b)), summed once per edge.
  return 2.0 * (phi.size() - phi.array().cos().sum());
}

double lyapunov_u1(const OrientedGraph& g, const Vec& theta) {
  const double n = g.n_vertices();
  const Vec half = 0.5 * g.phase_differences(theta);
  return 4.0 * half.array().sin().matrix().squaredNorm() / (n * n);
}

double lyapunov_u2(const Vec& theta) {
  const double n = theta.size();
  const double mean = theta.mean();
  return n * (theta.array() - mean).matrix().squaredNorm();
}

bool order_parameter_derivative_sign(const OrientedGraph& g, const Vec& omega,
                                     double coupling, const Vec& theta) {
  if (!(coupling > 0.0)) throw std::invalid_argument("coupling must be > 0");
  const Vec phi = g.phase_differences(theta);
  const double lhs =
      g.accumulate_edges(phi.array().sin().matrix()).norm();
  const Vec centered = (omega.array() - omega.mean()).matrix();
  const double rhs = g.n_vertices() / coupling * centered.norm();
  return lhs > rhs;
}

std::optional<double> asymptotic_r_bound(const OrientedGraph& g,
                                         const Vec& omega, double coupling) {
  if (!(coupling > 0.0)) return std::nullopt;
  const Vec centered = (omega.array() - omega.mean()).matrix();
  const double lambda2 = spectrum(g.laplacian()).lambda2;
  const double ratio =
      centered.squaredNorm() / (coupling * coupling * lambda2);
  if (ratio >= 1.0) return std::nullopt;  // expression leaves the reals
  return std::sqrt(1.0 - ratio);
}

SyncVerdict detect_sync(const OrientedGraph& g, const Vec& omega,
                        double coupling, const SimulationTrace& trace,
                        double tail_fraction, double residual_tol) {
  const int m = trace.size();
  if (m < 1) throw std::invalid_argument("empty trace");
  if (trace.states[0].size() != g.n_vertices()) {
    throw std::invalid_argument("trace must be in full coordinates");
  }
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw std::invalid_argument("tail_fraction must be in (0, 1]");
  }
  const int tail = static_cast<int>(std::ceil(tail_fraction * m));
  if (tail < 10) {
    throw std::invalid_argument(
        "trace too short: the inspected tail needs at least 10 samples");
  }

  SyncVerdict verdict;
  double worst = 0.0;
  for (int k = m - tail; k < m; ++k) {
    const Vec vel = rhs_full(g, omega, coupling, trace.states[k]);
    const double spread = g.phase_differences(vel).cwiseAbs().maxCoeff();
    worst = std::max(worst, spread);
  }
  verdict.residual = worst;
  verdict.synchronized = worst <= residual_tol;

  // Contraction rate: fit log ||V^T (theta_k - theta_end)|| against time,
  // restricted to the middle 60% of the observed decay so neither the
  // initial transient nor the flat numerical floor skews the slope.
  GroundingProjection proj(std::max(g.n_vertices(), 2));
  const Vec end_grounded = proj.ground(trace.states[m - 1]);
  std::vector<double> ts, ys;
  for (int k = 0; k + 1 < m; ++k) {
    const double d = (proj.ground(trace.states[k]) - end_grounded).norm();
    if (d > 0.0) {
      ts.push_back(trace.times[k]);
      ys.push_back(std::log(d));
    }
  }
  if (ys.size() >= 2) {
    double ymin = ys[0], ymax = ys[0];
    for (double y : ys) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    const double range = ymax - ymin;
    if (range > 0.0) {
      const double lo = ymin + 0.2 * range;
      const double hi = ymin + 0.8 * range;
      double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
      int count = 0;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        if (ys[i] < lo || ys[i] > hi) continue;
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
        ++count;
      }
      const double denom = count * stt - st * st;
      if (count >= 2 && denom > 0.0) {
        verdict.rate_estimate = -(count * sty - st * sy) / denom;
      }
    }
  }
  return verdict;
}

std::vector<ObservableRow> compute_observables(const OrientedGraph& g,
                                               const SimulationTrace& trace) {
  std::vector<ObservableRow> rows;
  rows.reserve(trace.states.size());
  for (const Vec& theta : trace.states) {
    ObservableRow row;
    const auto classic = order_parameter_classic(theta);
    row.classic_r = classic.magnitude;
    row.mean_phase = classic.mean_phase;
    row.r2 = order_parameter_general(g, theta);
    row.u1 = lyapunov_u1(g, theta);
    row.u2 = lyapunov_u2(theta);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kuramoto
