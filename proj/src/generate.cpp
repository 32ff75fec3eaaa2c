#include "blockgraph/generate.hpp"

#include <random>
#include <vector>

namespace blockgraph::generate {

Graph erdos_renyi(VertexId n, double edge_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(edge_probability);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (keep(rng)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph rmat(int scale, int edge_factor, std::uint64_t seed, double a, double b, double c) {
  const VertexId n = VertexId{1} << scale;
  const auto samples = static_cast<std::size_t>(edge_factor) * static_cast<std::size_t>(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  edges.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    VertexId u = 0;
    VertexId v = 0;
    for (int bit = 0; bit < scale; ++bit) {
      const double r = unit(rng);
      u <<= 1;
      v <<= 1;
      if (r < a) {
      } else if (r < a + b) {
        v |= 1;
      } else if (r < a + b + c) {
        u |= 1;
      } else {
        u |= 1;
        v |= 1;
      }
    }
    edges.push_back({u, v});
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph complete(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph path(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph::from_edges(n, std::move(edges));
}

Graph ring(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
  return Graph::from_edges(n, std::move(edges));
}

Graph star(VertexId leaves) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < leaves; ++u) edges.push_back({u, leaves});
  return Graph::from_edges(leaves + 1, std::move(edges));
}

}  // namespace blockgraph::generate
