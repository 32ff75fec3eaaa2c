#include "blockgraph/graph.hpp"

#include <algorithm>
#include <string>

#include "blockgraph/errors.hpp"

namespace blockgraph {

Graph::Graph(std::vector<EdgeId> offsets, std::vector<VertexId> adjacency, bool symmetrized)
    : offsets_(std::move(offsets)), adjacency_(std::move(adjacency)), symmetrized_(symmetrized) {
  if (offsets_.empty()) offsets_.push_back(0);
  if (offsets_.back() != static_cast<EdgeId>(adjacency_.size())) {
    throw ContractError("CSR offsets end at " + std::to_string(offsets_.back()) + " but adjacency holds " +
                        std::to_string(adjacency_.size()) + " entries");
  }
}

Graph Graph::from_edges(VertexId n, std::vector<Edge> edges, const BuildOptions& options) {
  if (options.symmetrize) {
    const auto original = edges.size();
    edges.reserve(original * 2);
    for (std::size_t i = 0; i < original; ++i) edges.push_back({edges[i].v, edges[i].u});
  }
  if (options.drop_self_loops) {
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  }
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw RangeError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") outside [0, " +
                       std::to_string(n) + ")");
    }
  }

  std::vector<EdgeId> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) ++offsets[static_cast<std::size_t>(e.u) + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];

  std::vector<VertexId> adjacency(edges.size());
  {
    std::vector<EdgeId> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) adjacency[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = e.v;
  }
  edges.clear();
  edges.shrink_to_fit();

  for (VertexId u = 0; u < n; ++u) {
    std::sort(adjacency.begin() + offsets[u], adjacency.begin() + offsets[u + 1]);
  }
  if (options.dedupe) {
    EdgeId write = 0;
    EdgeId row_begin = 0;
    for (VertexId u = 0; u < n; ++u) {
      const EdgeId row_end = offsets[u + 1];
      const EdgeId start = write;
      for (EdgeId i = row_begin; i < row_end; ++i) {
        if (write > start && adjacency[write - 1] == adjacency[i]) continue;
        adjacency[write++] = adjacency[i];
      }
      row_begin = row_end;
      offsets[u + 1] = write;
    }
    adjacency.resize(static_cast<std::size_t>(write));
    adjacency.shrink_to_fit();
  }
  return Graph(std::move(offsets), std::move(adjacency), options.symmetrize);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(adjacency_.size());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) out.push_back({u, v});
  }
  return out;
}

void Graph::validate() const {
  const VertexId n = num_vertices();
  if (offsets_.front() != 0) throw ContractError("offsets[0] != 0");
  for (VertexId u = 0; u < n; ++u) {
    if (offsets_[u + 1] < offsets_[u]) throw ContractError("offsets decrease at " + std::to_string(u));
    auto row = neighbors(u);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] < 0 || row[i] >= n) throw ContractError("neighbor out of range in row " + std::to_string(u));
      if (row[i] == u) throw ContractError("self-loop at " + std::to_string(u));
      if (i > 0 && row[i - 1] >= row[i]) throw ContractError("row " + std::to_string(u) + " not strictly sorted");
    }
  }
  if (symmetrized_) {
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v : neighbors(u)) {
        auto back = neighbors(v);
        if (!std::binary_search(back.begin(), back.end(), u)) {
          throw ContractError("missing reverse of (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
      }
    }
  }
}

}  // namespace blockgraph
