#pragma once

#include "kuramoto/graph.hpp"

namespace kuramoto {

/// Relative cutoff under which a Laplacian eigenvalue counts as zero.
inline constexpr double kKernelTol = 1e-9;

struct LaplacianSpectrum {
  Vec eigenvalues;  // sorted ascending
  double lambda2 = 0.0;
  double lambda_max = 0.0;
};

/// Full sorted spectrum of a symmetric matrix. Rejects non-symmetric input.
LaplacianSpectrum spectrum(const Mat& l);

/// Moore-Penrose pseudoinverse of a connected-graph Laplacian.
/// Rejects matrices whose kernel is larger than span{1} (disconnected graphs).
Mat pseudoinverse(const Mat& l);

/// Same pseudoinverse through the rank-one shift (L + J/n)^{-1} - J/n.
/// Valid only for connected-graph Laplacians; cheaper inside sampling loops.
Mat pseudoinverse_shifted(const Mat& l);

/// Induced infinity norm (maximum absolute row sum).
double infinity_norm(const Mat& m);

/// N x (N-1) orthonormal basis of the subspace orthogonal to 1_N.
/// Built from a Householder reflector so the basis is deterministic; any
/// orthonormal complement is equally valid and callers must not rely on
/// the particular columns.
class GroundingProjection {
 public:
  explicit GroundingProjection(int n);

  /// Wraps a caller-supplied basis after validating the defining identities.
  static GroundingProjection from_matrix(Mat v);

  int n() const { return static_cast<int>(v_.rows()); }
  const Mat& matrix() const { return v_; }

  /// V^T x: grounded coordinates.
  Vec ground(const Vec& x) const;
  /// V x_bar: the mean-zero representative in full coordinates.
  Vec lift(const Vec& x_bar) const;

 private:
  struct Unchecked {};
  GroundingProjection(Mat v, Unchecked) : v_(std::move(v)) {}

  Mat v_;
};

}  // namespace kuramoto
