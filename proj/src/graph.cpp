#include "gsd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "gsd/rng.hpp"

namespace gsd {

namespace {

// Union-find over n vertices; returns the number of connected components.
int component_count(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int components = n;
  for (const auto& e : edges) {
    const int a = find(e.i);
    const int b = find(e.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

std::vector<Edge> canonicalize(int n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ")");
    }
    if (e.i == e.j) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.i));
    }
    if (!(e.weight > 0.0)) {
      throw std::invalid_argument("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                  ") has non-positive weight");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(edges[k].i) + ", " +
                                  std::to_string(edges[k].j) + ")");
    }
  }
  return edges;
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : Graph(n, std::move(edges), {}) {}

Graph::Graph(int n, std::vector<Edge> edges, std::vector<std::array<double, 2>> positions)
    : n_(n), edges_(canonicalize(n, std::move(edges))), positions_(std::move(positions)) {
  if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
  if (!positions_.empty() && static_cast<int>(positions_.size()) != n_) {
    throw std::invalid_argument("positions size does not match vertex count");
  }
  const int components = component_count(n_, edges_);
  if (components != 1) {
    throw std::invalid_argument("graph is disconnected (" + std::to_string(components) +
                                " components)");
  }
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (const auto& e : g.edges()) {
    w(e.i, e.j) = e.weight;
    w(e.j, e.i) = e.weight;
  }
  return w;
}

Eigen::MatrixXd build_laplacian(const Graph& g) {
  Eigen::MatrixXd w = adjacency_matrix(g);
  Eigen::VectorXd degrees = w.rowwise().sum();
  Eigen::MatrixXd laplacian = -w;
  laplacian.diagonal() += degrees;
  return laplacian;
}

Graph generate_rgg(int n, double radius, double kernel_bandwidth, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("geometric graph needs n >= 2");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(kernel_bandwidth > 0.0)) throw std::invalid_argument("kernel bandwidth must be positive");

  constexpr int kMaxAttempts = 64;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto engine = make_engine(derive_seed(seed, SeedPurpose::GraphPlacement,
                                          static_cast<std::uint64_t>(attempt)));
    std::vector<std::array<double, 2>> pos(n);
    for (auto& p : pos) {
      p[0] = unit(engine);
      p[1] = unit(engine);
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = pos[i][0] - pos[j][0];
        const double dy = pos[i][1] - pos[j][1];
        const double d2 = dx * dx + dy * dy;
        if (d2 <= radius * radius) {
          edges.push_back({i, j, std::exp(-d2 / (2.0 * kernel_bandwidth * kernel_bandwidth))});
        }
      }
    }
    if (component_count(n, edges) == 1) {
      return Graph(n, std::move(edges), std::move(pos));
    }
  }
  throw std::runtime_error("failed to draw a connected geometric graph in " +
                           std::to_string(kMaxAttempts) + " placements; increase radius");
}

}  // namespace gsd
