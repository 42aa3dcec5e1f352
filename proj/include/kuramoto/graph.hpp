#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kuramoto {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Edge = std::pair<int, int>;

/// sin(x)/x with the removable singularity filled in (series below 1e-4).
double sinc(double x);

/// Strictly positive per-edge weights for a weighted Laplacian.
class WeightVector {
 public:
  explicit WeightVector(Vec weights);

  const Vec& values() const { return weights_; }
  Eigen::Index size() const { return weights_.size(); }

 private:
  Vec weights_;
};

/// Edge phase differences phi = B^T theta.
class PhaseDifferences {
 public:
  explicit PhaseDifferences(Vec phi) : phi_(std::move(phi)) {}

  const Vec& values() const { return phi_; }
  Eigen::Index size() const { return phi_.size(); }

 private:
  Vec phi_;
};

/// Simple connected undirected graph with a fixed orientation per edge.
///
/// Edges are normalized to (u, v) with u < v, sorted lexicographically, and
/// oriented low -> high, so the incidence matrix is reproducible across runs.
/// Connectivity is checked at construction; everything downstream assumes
/// lambda_2 > 0.
class OrientedGraph {
 public:
  OrientedGraph(int n_vertices, std::vector<Edge> edges);

  static OrientedGraph complete(int n);
  static OrientedGraph path(int n);
  static OrientedGraph cycle(int n);
  static OrientedGraph star(int n);

  /// Text format: header "N e", then one "u v" line per edge.
  /// Blank lines and anything after '#' are ignored.
  static OrientedGraph from_edge_list(std::istream& in);
  static OrientedGraph from_edge_list_file(const std::string& path);

  int n_vertices() const { return n_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(int v) const;
  int max_degree() const;
  bool is_tree() const;
  bool is_complete() const;

  /// N x e incidence matrix: column j has -1 at the edge source, +1 at the target.
  Mat incidence_matrix() const;
  /// L = B B^T.
  Mat laplacian() const;
  /// L_W = B diag(w) B^T.
  Mat weighted_laplacian(const WeightVector& w) const;

  /// B^T theta, computed edge-wise without forming B.
  Vec phase_differences(const Vec& theta) const;
  /// B x for an edge vector x, computed edge-wise without forming B.
  Vec accumulate_edges(const Vec& edge_values) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
};

/// Phase-dependent edge weights W(phi) = diag(sinc(phi_i)).
/// Every |phi_i| must be strictly below pi so the weights stay positive.
WeightVector sinc_weights(const PhaseDifferences& phi);

}  // namespace kuramoto
