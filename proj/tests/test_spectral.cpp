#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"

#include "kuramoto/spectral.hpp"

using namespace kuramoto;
using namespace kuramoto::testing;

namespace {

Mat centering_projector(int n) {
  return Mat::Identity(n, n) - Mat::Ones(n, n) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("path-3 spectrum is {0, 1, 3}") {
  const auto s = spectrum(OrientedGraph::path(3).laplacian());
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(std::abs(s.eigenvalues[0] - 0.0) < 1e-12);
  CHECK(std::abs(s.eigenvalues[1] - 1.0) < 1e-12);
  CHECK(std::abs(s.eigenvalues[2] - 3.0) < 1e-12);
  CHECK(s.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("named families have their known algebraic connectivity") {
  // Complete graph: every nonzero eigenvalue equals N.
  for (int n : {2, 5, 9}) {
    const auto s = spectrum(OrientedGraph::complete(n).laplacian());
    CHECK(s.lambda2 == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.lambda_max == doctest::Approx(n).epsilon(1e-12));
  }
  // Cycle: eigenvalues 2 - 2 cos(2 pi k / N).
  {
    const auto s = spectrum(OrientedGraph::cycle(4).laplacian());
    CHECK(s.lambda2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.lambda_max == doctest::Approx(4.0).epsilon(1e-12));
  }
  // Star: spectrum {0, 1, ..., 1, N}.
  {
    const auto s = spectrum(OrientedGraph::star(6).laplacian());
    CHECK(s.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.lambda_max == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(std::abs(s.eigenvalues[4] - 1.0) < 1e-12);
  }
}

TEST_CASE("spectrum rejects non-symmetric input") {
  Mat m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(spectrum(m), std::invalid_argument);
}

TEST_CASE("path-3 pseudoinverse matches the hand-computed matrix") {
  Mat expect(3, 3);
  expect << 5.0, -1.0, -4.0,
           -1.0,  2.0, -1.0,
           -4.0, -1.0,  5.0;
  expect /= 9.0;
  const Mat got = pseudoinverse(OrientedGraph::path(3).laplacian());
  CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("complete-graph pseudoinverse is (I - J/N)/N") {
  for (int n : {3, 7}) {
    const Mat got = pseudoinverse(OrientedGraph::complete(n).laplacian());
    const Mat expect = centering_projector(n) / static_cast<double>(n);
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("pseudoinverse identities hold on random graphs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_connected_graph(rng, 3 + trial, 0.3);
    const Mat l = g.laplacian();
    const Mat p = pseudoinverse(l);
    const int n = g.n_vertices();
    CHECK((l * p - centering_projector(n)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p * Vec::Ones(n)).cwiseAbs().maxCoeff() < 1e-10);
    // Both computation paths agree.
    const Mat ps = pseudoinverse_shifted(l);
    CHECK((p - ps).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("pseudoinverse rejects a disconnected laplacian") {
  // Two disjoint edges: kernel dimension 2.
  Mat l = Mat::Zero(4, 4);
  l(0, 0) = l(1, 1) = l(2, 2) = l(3, 3) = 1.0;
  l(0, 1) = l(1, 0) = -1.0;
  l(2, 3) = l(3, 2) = -1.0;
  CHECK_THROWS_AS(pseudoinverse(l), std::invalid_argument);
  CHECK_THROWS_AS(pseudoinverse_shifted(l), std::invalid_argument);
}

TEST_CASE("infinity norm is the maximum absolute row sum") {
  Mat m(2, 2);
  m << 1.0, -2.0, 3.0, 0.5;
  CHECK(infinity_norm(m) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(infinity_norm(Mat::Zero(3, 3)) == 0.0);
}

TEST_CASE("grounding projection satisfies its defining identities") {
  for (int n : {2, 3, 8}) {
    const GroundingProjection proj(n);
    const Mat v = proj.matrix();
    REQUIRE(v.rows() == n);
    REQUIRE(v.cols() == n - 1);
    CHECK((v.transpose() * v - Mat::Identity(n - 1, n - 1))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    CHECK((v.transpose() * Vec::Ones(n)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((v * v.transpose() - centering_projector(n)).cwiseAbs().maxCoeff() <
          1e-13);
  }
}

TEST_CASE("ground and lift round-trip mean-zero vectors") {
  std::mt19937_64 rng(22);
  const GroundingProjection proj(6);
  const Vec theta = random_phases(rng, 6, 2.0);
  const Vec centered = (theta.array() - theta.mean()).matrix();
  CHECK(max_abs_diff(proj.lift(proj.ground(theta)), centered) < 1e-13);
  // Constant vectors ground to zero.
  CHECK(proj.ground(Vec::Constant(6, 3.7)).cwiseAbs().maxCoeff() < 1e-13);
  // Grounding preserves the norm of mean-zero vectors.
  CHECK(proj.ground(centered).norm() ==
        doctest::Approx(centered.norm()).epsilon(1e-13));
}

TEST_CASE("from_matrix accepts any rotated basis and rejects invalid ones") {
  const int n = 5;
  const GroundingProjection house(n);

  // Rotate the basis by a random orthogonal Q: still a valid grounding.
  std::mt19937_64 rng(23);
  Mat a(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      a(i, j) = std::normal_distribution<double>()(rng);
  const Mat q = Eigen::HouseholderQR<Mat>(a).householderQ();
  const auto rotated = GroundingProjection::from_matrix(house.matrix() * q);

  // Basis-independent quantities agree: norms of grounded vectors and the
  // projector itself.
  const Vec x = random_phases(rng, n, 2.0);
  CHECK(rotated.ground(x).norm() ==
        doctest::Approx(house.ground(x).norm()).epsilon(1e-12));
  CHECK((rotated.matrix() * rotated.matrix().transpose() -
         house.matrix() * house.matrix().transpose())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // Not orthonormal -> rejected.
  CHECK_THROWS_AS(GroundingProjection::from_matrix(2.0 * house.matrix()),
                  std::invalid_argument);
  // Orthonormal but not orthogonal to 1 -> rejected.
  Mat bad = Mat::Zero(n, n - 1);
  for (int j = 0; j < n - 1; ++j) bad(j, j) = 1.0;
  CHECK_THROWS_AS(GroundingProjection::from_matrix(bad),
                  std::invalid_argument);
}
