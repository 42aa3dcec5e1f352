#include "kuramoto/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kuramoto {

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

WeightVector::WeightVector(Vec weights) : weights_(std::move(weights)) {
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) {
      throw std::invalid_argument("edge weights must be strictly positive");
    }
  }
}

namespace {

std::vector<Edge> normalize_edges(int n, std::vector<Edge> edges) {
  std::set<Edge> seen;
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw std::invalid_argument("duplicate edge");
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

bool connected(int n, const std::vector<Edge>& edges) {
  if (n <= 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> visited(n, 0);
  std::vector<int> stack = {0};
  visited[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!visited[w]) {
        visited[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

}  // namespace

OrientedGraph::OrientedGraph(int n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(normalize_edges(n_vertices, std::move(edges))) {
  if (n_ < 2) throw std::invalid_argument("graph needs at least two vertices");
  if (!connected(n_, edges_)) {
    throw std::invalid_argument("graph must be connected");
  }
  degree_.assign(n_, 0);
  for (const auto& [u, v] : edges_) {
    ++degree_[u];
    ++degree_[v];
  }
}

OrientedGraph OrientedGraph::complete(int n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return {n, std::move(edges)};
}

OrientedGraph OrientedGraph::path(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return {n, std::move(edges)};
}

OrientedGraph OrientedGraph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  edges.push_back({0, n - 1});
  return {n, std::move(edges)};
}

OrientedGraph OrientedGraph::star(int n) {
  if (n < 2) throw std::invalid_argument("star needs at least two vertices");
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({0, v});
  return {n, std::move(edges)};
}

OrientedGraph OrientedGraph::from_edge_list(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.size() < 2) {
    throw std::invalid_argument("edge list needs a 'N e' header");
  }
  auto to_int = [](const std::string& s) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer in edge list: " + s);
    }
    if (pos != s.size()) {
      throw std::invalid_argument("bad integer in edge list: " + s);
    }
    return value;
  };
  const int n = to_int(tokens[0]);
  const int e = to_int(tokens[1]);
  if (e < 0 || tokens.size() != static_cast<std::size_t>(2 + 2 * e)) {
    throw std::invalid_argument("edge list token count does not match header");
  }
  std::vector<Edge> edges;
  edges.reserve(e);
  for (int j = 0; j < e; ++j) {
    edges.push_back({to_int(tokens[2 + 2 * j]), to_int(tokens[3 + 2 * j])});
  }
  return {n, std::move(edges)};
}

OrientedGraph OrientedGraph::from_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return from_edge_list(in);
}

int OrientedGraph::degree(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex index");
  return degree_[v];
}

int OrientedGraph::max_degree() const {
  return *std::max_element(degree_.begin(), degree_.end());
}

bool OrientedGraph::is_tree() const {
  return n_edges() == n_ - 1;  // connected by construction
}

bool OrientedGraph::is_complete() const {
  return n_edges() == n_ * (n_ - 1) / 2;
}

Mat OrientedGraph::incidence_matrix() const {
  Mat b = Mat::Zero(n_, n_edges());
  for (int j = 0; j < n_edges(); ++j) {
    b(edges_[j].first, j) = -1.0;
    b(edges_[j].second, j) = 1.0;
  }
  return b;
}

Mat OrientedGraph::laplacian() const {
  Mat l = Mat::Zero(n_, n_);
  for (const auto& [u, v] : edges_) {
    l(u, u) += 1.0;
    l(v, v) += 1.0;
    l(u, v) -= 1.0;
    l(v, u) -= 1.0;
  }
  return l;
}

Mat OrientedGraph::weighted_laplacian(const WeightVector& w) const {
  if (w.size() != n_edges()) {
    throw std::invalid_argument("weight count does not match edge count");
  }
  Mat l = Mat::Zero(n_, n_);
  for (int j = 0; j < n_edges(); ++j) {
    const auto& [u, v] = edges_[j];
    const double wj = w.values()[j];
    l(u, u) += wj;
    l(v, v) += wj;
    l(u, v) -= wj;
    l(v, u) -= wj;
  }
  return l;
}

Vec OrientedGraph::phase_differences(const Vec& theta) const {
  if (theta.size() != n_) {
    throw std::invalid_argument("state dimension does not match vertex count");
  }
  Vec phi(n_edges());
  for (int j = 0; j < n_edges(); ++j) {
    phi[j] = theta[edges_[j].second] - theta[edges_[j].first];
  }
  return phi;
}

Vec OrientedGraph::accumulate_edges(const Vec& edge_values) const {
  if (edge_values.size() != n_edges()) {
    throw std::invalid_argument("edge vector dimension does not match");
  }
  Vec out = Vec::Zero(n_);
  for (int j = 0; j < n_edges(); ++j) {
    out[edges_[j].first] -= edge_values[j];
    out[edges_[j].second] += edge_values[j];
  }
  return out;
}

WeightVector sinc_weights(const PhaseDifferences& phi) {
  constexpr double kPi = 3.14159265358979323846;
  Vec w(phi.size());
  for (Eigen::Index j = 0; j < phi.size(); ++j) {
    if (!(std::abs(phi.values()[j]) < kPi)) {
      throw std::invalid_argument(
          "phase differences must stay strictly inside (-pi, pi)");
    }
    w[j] = sinc(phi.values()[j]);
  }
  return WeightVector(std::move(w));
}

}  // namespace kuramoto
