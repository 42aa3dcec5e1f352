#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"

#include "kuramoto/dynamics.hpp"
#include "kuramoto/observables.hpp"

using namespace kuramoto;
using namespace kuramoto::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("classic order parameter on hand-checked configurations") {
  // Fully aligned: R = 1, mean phase = the common phase.
  const auto aligned = order_parameter_classic(Vec::Constant(3, 0.7));
  CHECK(aligned.magnitude == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(aligned.mean_phase == doctest::Approx(0.7).epsilon(1e-15));
  CHECK_FALSE(aligned.degenerate);

  // Cube roots of unity: centroid vanishes.
  Vec roots(3);
  roots << 0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0;
  const auto degenerate = order_parameter_classic(roots);
  CHECK(degenerate.magnitude < 1e-14);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.mean_phase == 0.0);

  // Two phases a right angle apart: R = sqrt(2)/2, mean at the bisector.
  Vec pair(2);
  pair << 0.0, kPi / 2.0;
  const auto bisect = order_parameter_classic(pair);
  CHECK(bisect.magnitude == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(bisect.mean_phase == doctest::Approx(kPi / 4.0).epsilon(1e-15));

  // Mean phase lands in (-pi, pi]: the -pi edge folds to +pi.
  const auto edge = order_parameter_classic(Vec::Constant(2, -kPi));
  CHECK(edge.mean_phase == doctest::Approx(kPi).epsilon(1e-12));

  CHECK_THROWS_AS(order_parameter_classic(Vec()), std::invalid_argument);
}

TEST_CASE("general and classic order parameters coincide on complete graphs") {
  std::mt19937_64 rng(41);
  for (int n : {2, 3, 6, 9}) {
    const auto g = OrientedGraph::complete(n);
    for (int trial = 0; trial < 25; ++trial) {
      const Vec theta = random_phases(rng, n, kPi);
      const double r2 = order_parameter_general(g, theta);
      const double big_r = order_parameter_classic(theta).magnitude;
      CHECK(std::abs(r2 - big_r * big_r) < 1e-14);
    }
  }
}

TEST_CASE("general order parameter is 1 at sync and dips below on sparse graphs") {
  const auto p4 = OrientedGraph::path(4);
  CHECK(order_parameter_general(p4, Vec::Constant(4, 1.2)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // Single right-angle edge difference on a 2-cycle of phases.
  Vec theta(4);
  theta << 0.0, 0.0, 0.0, kPi;
  // r^2 = (16 - 6 + 2*(1 + 1 - 1)) / 16 = 12/16
  CHECK(order_parameter_general(p4, theta) ==
        doctest::Approx(12.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("disagreement, U1 and r^2 satisfy their exact identities") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(rng, 3 + trial % 9, 0.35);
    const Vec theta = random_phases(rng, g.n_vertices(), 2.5);
    const double n2 = static_cast<double>(g.n_vertices()) * g.n_vertices();
    const double u1 = lyapunov_u1(g, theta);
    const double r2 = order_parameter_general(g, theta);
    const double dis = disagreement(g, theta);
    CHECK(std::abs(u1 + r2 - 1.0) < 1e-13);          // U1 = 1 - r^2
    CHECK(std::abs(dis - n2 * u1) < 1e-11);          // disagreement = N^2 U1
  }
  // Antipodal pair: each edge contributes 2(1 - cos(pi)) = 4.
  const auto k2 = OrientedGraph::complete(2);
  Vec anti(2);
  anti << 0.0, kPi;
  CHECK(disagreement(k2, anti) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("U2 is the scaled variance and ignores uniform shifts") {
  Vec theta(2);
  theta << 1.0, -1.0;
  CHECK(lyapunov_u2(theta) == doctest::Approx(4.0).epsilon(1e-15));
  std::mt19937_64 rng(43);
  const Vec x = random_phases(rng, 7, 2.0);
  const double base = lyapunov_u2(x);
  CHECK(lyapunov_u2(x + Vec::Constant(7, 5.3)) ==
        doctest::Approx(base).epsilon(1e-12));
  // Quadratic form identity: U2 = theta^T (N I - 1 1^T) theta.
  const Mat q = 7.0 * Mat::Identity(7, 7) - Mat::Ones(7, 7);
  CHECK(base == doctest::Approx(x.dot(q * x)).epsilon(1e-12));
}

TEST_CASE("N^2 U1 approximates U2 to fourth order on complete graphs") {
  std::mt19937_64 rng(44);
  for (int n : {3, 5, 8}) {
    const auto g = OrientedGraph::complete(n);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec theta = random_phases(rng, n, 0.3);
      const Vec phi = g.phase_differences(theta);
      const double n2 = static_cast<double>(n) * n;
      const double gap = std::abs(n2 * lyapunov_u1(g, theta) -
                                  lyapunov_u2(theta));
      const double cap = phi.array().pow(4).sum() / 12.0 + 1e-14;
      CHECK(gap <= cap);
    }
  }
}

TEST_CASE("growth indicator: false at the boundary, true outside, false inside") {
  const auto g = OrientedGraph::complete(2);
  Vec omega(2);
  omega << 1.0, -1.0;
  const double k = 4.0;

  // The locked state sits exactly on the boundary of the growth region, and
  // the strict inequality must exclude it.
  Vec locked(2);
  locked << kPi / 6.0, 0.0;
  CHECK_FALSE(order_parameter_derivative_sign(g, omega, k, locked));

  Vec outside(2);
  outside << kPi / 3.0, 0.0;
  CHECK(order_parameter_derivative_sign(g, omega, k, outside));

  Vec inside(2);
  inside << 0.01, 0.0;
  CHECK_FALSE(order_parameter_derivative_sign(g, omega, k, inside));

  CHECK_THROWS_AS(order_parameter_derivative_sign(g, omega, 0.0, locked),
                  std::invalid_argument);
}

TEST_CASE("growth indicator ignores the frequency mean") {
  const auto g = OrientedGraph::complete(2);
  Vec shifted(2);
  shifted << 2.0, 0.0;  // centered copy of (1, -1)
  Vec outside(2);
  outside << kPi / 3.0, 0.0;
  CHECK(order_parameter_derivative_sign(g, shifted, 4.0, outside));
}

TEST_CASE("asymptotic bound formula on hand-checked inputs") {
  const auto g = OrientedGraph::complete(2);
  Vec omega(2);
  omega << 1.0, -1.0;

  const auto strong = asymptotic_r_bound(g, omega, 4.0);
  REQUIRE(strong.has_value());
  // sqrt(1 - 2 / (16 * 2)) = sqrt(15/16)
  CHECK(*strong == doctest::Approx(std::sqrt(15.0 / 16.0)).epsilon(1e-15));

  // Identical frequencies: the bound is vacuous at 1.
  const auto vacuous = asymptotic_r_bound(g, Vec::Constant(2, 0.8), 1.0);
  REQUIRE(vacuous.has_value());
  CHECK(*vacuous == doctest::Approx(1.0).epsilon(1e-15));

  // Expression leaves the reals: no information.
  CHECK_FALSE(asymptotic_r_bound(g, omega, 1.0).has_value());
  CHECK_FALSE(asymptotic_r_bound(g, omega, 0.0).has_value());

  // Mean shift changes nothing.
  Vec shifted(2);
  shifted << 2.0, 0.0;
  CHECK(*asymptotic_r_bound(g, shifted, 4.0) ==
        doctest::Approx(*strong).epsilon(1e-15));
}

TEST_CASE("detect_sync labels locked and running two-oscillator regimes") {
  const auto g = OrientedGraph::complete(2);
  Vec omega(2);
  omega << 1.0, -1.0;
  SimulationConfig cfg;
  cfg.step = 0.01;
  cfg.record_every = 10;

  cfg.coupling = 4.0;
  cfg.t_end = 30.0;
  const auto locked = integrate(g, omega, cfg, Vec::Zero(2));
  const auto verdict = detect_sync(g, omega, 4.0, locked, 0.2, 1e-7);
  CHECK(verdict.synchronized);
  CHECK(verdict.residual < 1e-10);
  // Contraction rate at the locked state: (K/N) lambda2 cos(pi/6) = 2 sqrt(3).
  CHECK(verdict.rate_estimate ==
        doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(0.05));

  cfg.coupling = 1.9;
  cfg.t_end = 40.0;
  const auto running = integrate(g, omega, cfg, Vec::Zero(2));
  CHECK_FALSE(detect_sync(g, omega, 1.9, running, 0.2, 1e-7).synchronized);
}

TEST_CASE("detect_sync validates its inputs") {
  const auto g = OrientedGraph::complete(2);
  SimulationConfig cfg;
  cfg.coupling = 1.0;
  cfg.step = 0.1;
  cfg.t_end = 10.0;
  const auto trace = integrate(g, Vec::Zero(2), cfg, Vec::Zero(2));

  CHECK_THROWS_AS(detect_sync(g, Vec::Zero(2), 1.0, trace, 0.0, 1e-7),
                  std::invalid_argument);
  CHECK_THROWS_AS(detect_sync(g, Vec::Zero(2), 1.0, trace, 1.5, 1e-7),
                  std::invalid_argument);

  SimulationTrace offgrid;  // grounded-dimension states are rejected
  offgrid.times = {0.0};
  offgrid.states = {Vec::Zero(1)};
  CHECK_THROWS_AS(detect_sync(g, Vec::Zero(2), 1.0, offgrid, 0.5, 1e-7),
                  std::invalid_argument);

  SimulationTrace tiny;  // tail would hold fewer than 10 samples
  for (int k = 0; k < 12; ++k) {
    tiny.times.push_back(0.1 * k);
    tiny.states.push_back(Vec::Zero(2));
  }
  CHECK_THROWS_AS(detect_sync(g, Vec::Zero(2), 1.0, tiny, 0.2, 1e-7),
                  std::invalid_argument);
}

TEST_CASE("both Lyapunov functions decay along identical-frequency flows") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = random_connected_graph(rng, 5 + 3 * trial, 0.35);
    const int n = g.n_vertices();
    SimulationConfig cfg;
    cfg.coupling = 1.0;
    cfg.step = 0.01;
    cfg.t_end = 20.0;
    cfg.record_every = 5;
    const auto trace =
        integrate(g, Vec::Zero(n), cfg, random_phases(rng, n, kPi / 4.0));
    const auto rows = compute_observables(g, trace);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k].u1 <= rows[k - 1].u1 + 1e-9);
      CHECK(rows[k].u2 <= rows[k - 1].u2 + 1e-9);
    }
  }
}

TEST_CASE("compute_observables mirrors the scalar helpers") {
  std::mt19937_64 rng(46);
  const auto g = random_connected_graph(rng, 5, 0.5);
  SimulationConfig cfg;
  cfg.coupling = 1.2;
  cfg.step = 0.05;
  cfg.t_end = 1.0;
  const auto trace =
      integrate(g, random_centered_omega(rng, 5, 0.4), cfg,
                random_phases(rng, 5, 1.0));
  const auto rows = compute_observables(g, trace);
  REQUIRE(static_cast<int>(rows.size()) == trace.size());
  for (int k = 0; k < trace.size(); ++k) {
    const Vec& theta = trace.states[k];
    CHECK(rows[k].classic_r ==
          doctest::Approx(order_parameter_classic(theta).magnitude)
              .epsilon(1e-15));
    CHECK(rows[k].r2 ==
          doctest::Approx(order_parameter_general(g, theta)).epsilon(1e-15));
    CHECK(rows[k].u1 ==
          doctest::Approx(lyapunov_u1(g, theta)).epsilon(1e-15));
    CHECK(rows[k].u2 == doctest::Approx(lyapunov_u2(theta)).epsilon(1e-15));
  }
}
