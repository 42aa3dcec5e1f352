#include "kuramoto/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace kuramoto {

LaplacianSpectrum spectrum(const Mat& l) {
  if (l.rows() != l.cols()) throw std::invalid_argument("matrix not square");
  const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
  if ((l - l.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(l);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  LaplacianSpectrum s;
  s.eigenvalues = es.eigenvalues();  // ascending
  s.lambda_max = s.eigenvalues[s.eigenvalues.size() - 1];
  s.lambda2 = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
  return s;
}

Mat pseudoinverse(const Mat& l) {
  if (l.rows() != l.cols()) throw std::invalid_argument("matrix not square");
  Eigen::SelfAdjointEigenSolver<Mat> es(l);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Vec& ev = es.eigenvalues();
  const double cutoff = kKernelTol * std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  int kernel_dim = 0;
  Vec inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= cutoff) {
      inv[i] = 0.0;
      ++kernel_dim;
    } else {
      inv[i] = 1.0 / ev[i];
    }
  }
  if (kernel_dim > 1) {
    throw std::invalid_argument(
        "Laplacian kernel is larger than span{1}: graph is disconnected");
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Mat pseudoinverse_shifted(const Mat& l) {
  const auto n = l.rows();
  if (n != l.cols()) throw std::invalid_argument("matrix not square");
  const Mat j_over_n = Mat::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::LLT<Mat> llt(l + j_over_n);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(
        "shifted Laplacian is not positive definite: graph is disconnected");
  }
  return llt.solve(Mat::Identity(n, n)) - j_over_n;
}

double infinity_norm(const Mat& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

GroundingProjection::GroundingProjection(int n) {
  if (n < 2) throw std::invalid_argument("grounding needs at least 2 vertices");
  // Householder reflector H = I - 2 w w^T / ||w||^2 with w = e1 - 1/sqrt(n)
  // maps e1 to the normalized all-ones vector; columns 2..n then span 1^perp.
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  Vec w = Vec::Constant(n, -inv_sqrt_n);
  w[0] += 1.0;
  const double wtw = w.squaredNorm();
  Mat h = Mat::Identity(n, n);
  if (wtw > 0.0) h -= (2.0 / wtw) * (w * w.transpose());
  v_ = h.rightCols(n - 1);
}

GroundingProjection GroundingProjection::from_matrix(Mat v) {
  const auto n = v.rows();
  if (n < 2 || v.cols() != n - 1) {
    throw std::invalid_argument("basis must be N x (N-1)");
  }
  const Mat gram = v.transpose() * v;
  if ((gram - Mat::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("basis columns must be orthonormal");
  }
  if ((v.transpose() * Vec::Ones(n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("basis must be orthogonal to the ones vector");
  }
  return {std::move(v), Unchecked{}};
}

Vec GroundingProjection::ground(const Vec& x) const {
  if (x.size() != v_.rows()) throw std::invalid_argument("dimension mismatch");
  return v_.transpose() * x;
}

Vec GroundingProjection::lift(const Vec& x_bar) const {
  if (x_bar.size() != v_.cols()) {
    throw std::invalid_argument("dimension mismatch");
  }
  return v_ * x_bar;
}

}  // namespace kuramoto
