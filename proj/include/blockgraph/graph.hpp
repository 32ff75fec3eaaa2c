#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "blockgraph/types.hpp"

namespace blockgraph {

struct Edge {
  VertexId u;
  VertexId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct BuildOptions {
  bool symmetrize = true;
  bool dedupe = true;
  bool drop_self_loops = true;
};

// Immutable graph in CSR form. Undirected graphs store each edge in both
// directions, so num_edges() counts directed edges.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}
  Graph(std::vector<EdgeId> offsets, std::vector<VertexId> adjacency, bool symmetrized);

  // Builds CSR from an edge list over vertices [0, n). Rows come out sorted.
  static Graph from_edges(VertexId n, std::vector<Edge> edges, const BuildOptions& options = {});

  VertexId num_vertices() const noexcept { return static_cast<VertexId>(offsets_.size()) - 1; }
  EdgeId num_edges() const noexcept { return offsets_.back(); }
  bool is_symmetrized() const noexcept { return symmetrized_; }

  std::span<const VertexId> neighbors(VertexId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  EdgeId degree(VertexId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  const std::vector<EdgeId>& offsets() const noexcept { return offsets_; }
  const std::vector<VertexId>& adjacency() const noexcept { return adjacency_; }

  // Directed edge list in CSR order.
  std::vector<Edge> edges() const;

  // Throws ContractError when an invariant does not hold: offsets monotone,
  // rows sorted without duplicates or self-loops, IDs in range and, for
  // symmetrized graphs, every edge has its reverse.
  void validate() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<EdgeId> offsets_;
  std::vector<VertexId> adjacency_;
  bool symmetrized_ = false;
};

}  // namespace blockgraph
