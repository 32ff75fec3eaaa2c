#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "blockgraph/graph.hpp"

// Sequential reference implementations. Depend on Graph only.
namespace blockgraph::oracle {

inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();
// Largest n the adjacency-matrix and dense-matrix paths accept.
inline constexpr VertexId kDenseLimit = 2000;

// Triple loop over u < v < w with adjacency-matrix membership when
// n <= kDenseLimit; an edge-iterator merge count otherwise.
std::uint64_t triangles(const Graph& graph);

// Union-find; each vertex labelled with the smallest ID in its component.
std::vector<VertexId> components(const Graph& graph);

// Hop distance from s, kUnreachable when not reachable.
std::vector<std::int64_t> bfs(const Graph& graph, VertexId s);

// Power iteration from the uniform vector with dangling mass spread uniformly.
// Row k of the result is the rank after k+1 iterations.
std::vector<std::vector<double>> pagerank_history(const Graph& graph, double damping, std::size_t iterations);
std::vector<double> pagerank(const Graph& graph, double damping, std::size_t iterations);

}  // namespace blockgraph::oracle
