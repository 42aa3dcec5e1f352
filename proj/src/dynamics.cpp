#include "kuramoto/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace kuramoto {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBlowUp = 1e8;
}  // namespace

void SimulationConfig::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (record_every < 1) {
    throw std::invalid_argument("record_every must be at least 1");
  }
  if (!std::isfinite(coupling)) {
    throw std::invalid_argument("coupling must be finite");
  }
}

Vec rhs_full(const OrientedGraph& g, const Vec& omega, double coupling,
             const Vec& theta) {
  const Vec phi = g.phase_differences(theta);
  const Vec flow = g.accumulate_edges(phi.array().sin().matrix());
  return omega - (coupling / g.n_vertices()) * flow;
}

Vec rhs_linearized(const OrientedGraph& g, const Vec& omega, double coupling,
                   const Vec& theta) {
  const Vec flow = g.accumulate_edges(g.phase_differences(theta));
  return omega - (coupling / g.n_vertices()) * flow;
}

Vec rhs_grounded(const OrientedGraph& g, const Vec& omega, double coupling,
                 const Vec& theta_bar, const GroundingProjection& proj) {
  return proj.ground(rhs_full(g, center_frequencies(omega).first, coupling,
                              proj.lift(theta_bar)));
}

std::pair<Vec, double> center_frequencies(const Vec& omega) {
  const double mean = omega.mean();
  return {omega.array() - mean, mean};
}

SimulationTrace integrate(const OrientedGraph& g, const Vec& omega,
                          const SimulationConfig& cfg, const Vec& theta0,
                          Frame frame) {
  cfg.validate();
  const int n = g.n_vertices();
  const bool grounded = frame == Frame::grounded;
  if (grounded && n < 2) {
    throw std::invalid_argument("grounded frame needs at least two vertices");
  }
  const Eigen::Index dim = grounded ? n - 1 : n;
  if (theta0.size() != dim) {
    throw std::invalid_argument("initial state has the wrong dimension");
  }
  if (omega.size() != n) {
    throw std::invalid_argument("omega dimension does not match vertex count");
  }

  GroundingProjection proj(std::max(n, 2));

  auto f = [&](const Vec& y) -> Vec {
    if (grounded) return rhs_grounded(g, omega, cfg.coupling, y, proj);
    return rhs_full(g, omega, cfg.coupling, y);
  };

  const long long n_steps = std::llround(cfg.t_end / cfg.step);
  SimulationTrace trace;
  trace.times.reserve(static_cast<std::size_t>(n_steps / cfg.record_every + 2));
  trace.states.reserve(trace.times.capacity());

  Vec y = theta0;
  trace.times.push_back(0.0);
  trace.states.push_back(y);
  const double h = cfg.step;
  for (long long k = 0; k < n_steps; ++k) {
    const Vec k1 = f(y);
    const Vec k2 = f(y + 0.5 * h * k1);
    const Vec k3 = f(y + 0.5 * h * k2);
    const Vec k4 = f(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > kBlowUp) {
      throw NumericalError("state blew up during integration at t = " +
                           std::to_string((k + 1) * h));
    }
    const bool last = k + 1 == n_steps;
    if ((k + 1) % cfg.record_every == 0 || last) {
      trace.times.push_back((k + 1) * h);
      trace.states.push_back(y);
    }
  }
  return trace;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

Vec wrap_angles(const Vec& a) {
  Vec out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out[i] = wrap_angle(a[i]);
  return out;
}

double default_t_end(double coupling, int n, double lambda2) {
  if (!(coupling > 0.0) || !(lambda2 > 0.0)) return 50.0;
  return 50.0 / coupling * static_cast<double>(n) / lambda2;
}

}  // namespace kuramoto
