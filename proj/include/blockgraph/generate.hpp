#pragma once

#include <cstdint>

#include "blockgraph/graph.hpp"

namespace blockgraph::generate {

// G(n, p) with each unordered pair kept independently; symmetrized.
Graph erdos_renyi(VertexId n, double edge_probability, std::uint64_t seed);

// R-MAT with 2^scale vertices and edge_factor * 2^scale sampled edges,
// symmetrized, deduplicated, self-loops dropped.
Graph rmat(int scale, int edge_factor, std::uint64_t seed, double a = 0.57, double b = 0.19,
           double c = 0.19);

Graph complete(VertexId n);
Graph path(VertexId n);
Graph ring(VertexId n);
// Vertex 0..n-1 are leaves; the hub is vertex n (highest ID).
Graph star(VertexId leaves);

}  // namespace blockgraph::generate
