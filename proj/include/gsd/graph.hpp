#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace gsd {

struct Edge {
  int i = 0;
  int j = 0;
  double weight = 0.0;
};

// Weighted undirected connected graph. Each edge is stored once with i < j;
// the adjacency matrix is implicitly symmetric. Construction rejects
// self-loops, non-positive weights, duplicate edges, and disconnected
// vertex sets. Immutable after construction.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges);
  Graph(int n, std::vector<Edge> edges, std::vector<std::array<double, 2>> positions);

  int num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Planar coordinates, present for geometric graphs.
  bool has_positions() const { return !positions_.empty(); }
  const std::vector<std::array<double, 2>>& positions() const { return positions_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::array<double, 2>> positions_;
};

Eigen::MatrixXd adjacency_matrix(const Graph& g);

// L = D - W with D = diag(W 1). Rows sum to zero.
Eigen::MatrixXd build_laplacian(const Graph& g);

// Random geometric graph: n vertices uniform in the unit square, an edge
// between every pair within `radius`, weight exp(-d^2 / (2 bw^2)). Placement
// is redrawn (bounded number of retries) until the graph is connected, so the
// result is an RGG conditioned on connectivity. Deterministic given seed.
Graph generate_rgg(int n, double radius, double kernel_bandwidth, std::uint64_t seed);

}  // namespace gsd
