#include "blockgraph/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace blockgraph::oracle {

std::uint64_t triangles(const Graph& graph) {
  const VertexId n = graph.num_vertices();
  std::uint64_t count = 0;
  if (n <= kDenseLimit) {
    const auto size = static_cast<std::size_t>(n);
    std::vector<unsigned char> adjacent(size * size, 0);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v : graph.neighbors(u)) adjacent[static_cast<std::size_t>(u) * size + static_cast<std::size_t>(v)] = 1;
    }
    auto edge = [&](VertexId a, VertexId b) {
      return adjacent[static_cast<std::size_t>(a) * size + static_cast<std::size_t>(b)] != 0;
    };
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (!edge(u, v)) continue;
        for (VertexId w = v + 1; w < n; ++w) {
          if (edge(u, w) && edge(v, w)) ++count;
        }
      }
    }
    return count;
  }
  // Larger graphs: for every u < v edge count common neighbors w > v.
  for (VertexId u = 0; u < n; ++u) {
    auto nu = graph.neighbors(u);
    for (VertexId v : nu) {
      if (v <= u) continue;
      auto nv = graph.neighbors(v);
      auto i = std::upper_bound(nu.begin(), nu.end(), v);
      auto j = std::upper_bound(nv.begin(), nv.end(), v);
      while (i != nu.end() && j != nv.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++count;
          ++i;
          ++j;
        }
      }
    }
  }
  return count;
}

std::vector<VertexId> components(const Graph& graph) {
  const auto n = static_cast<std::size_t>(graph.num_vertices());
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId x) {
    VertexId root = x;
    while (parent[static_cast<std::size_t>(root)] != root) root = parent[static_cast<std::size_t>(root)];
    while (parent[static_cast<std::size_t>(x)] != root) {
      const VertexId up = parent[static_cast<std::size_t>(x)];
      parent[static_cast<std::size_t>(x)] = root;
      x = up;
    }
    return root;
  };
  for (VertexId u = 0; u < graph.num_vertices(); ++u) {
    for (VertexId v : graph.neighbors(u)) {
      const VertexId a = find(u);
      const VertexId b = find(v);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<VertexId> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = find(static_cast<VertexId>(x));
  return labels;
}

std::vector<std::int64_t> bfs(const Graph& graph, VertexId s) {
  std::vector<std::int64_t> distance(static_cast<std::size_t>(graph.num_vertices()), kUnreachable);
  std::deque<VertexId> queue{s};
  distance[static_cast<std::size_t>(s)] = 0;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (VertexId v : graph.neighbors(u)) {
      auto& d = distance[static_cast<std::size_t>(v)];
      if (d != kUnreachable) continue;
      d = distance[static_cast<std::size_t>(u)] + 1;
      queue.push_back(v);
    }
  }
  return distance;
}

std::vector<std::vector<double>> pagerank_history(const Graph& graph, double damping, std::size_t iterations) {
  const VertexId n = graph.num_vertices();
  std::vector<std::vector<double>> history;
  if (n == 0) return history;
  const auto size = static_cast<std::size_t>(n);
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> rank(size, uniform);

  if (n <= kDenseLimit) {
    // Dense Google matrix: G[v][u] = d/deg(u) for each edge, dangling columns
    // spread evenly, plus the teleport term.
    std::vector<double> g(size * size, (1.0 - damping) * uniform);
    for (VertexId u = 0; u < n; ++u) {
      const auto col = static_cast<std::size_t>(u);
      if (graph.degree(u) == 0) {
        for (std::size_t v = 0; v < size; ++v) g[v * size + col] += damping * uniform;
        continue;
      }
      const double share = damping / static_cast<double>(graph.degree(u));
      for (VertexId v : graph.neighbors(u)) g[static_cast<std::size_t>(v) * size + col] += share;
    }
    for (std::size_t it = 0; it < iterations; ++it) {
      std::vector<double> next(size, 0.0);
      for (std::size_t v = 0; v < size; ++v) {
        double sum = 0.0;
        for (std::size_t u = 0; u < size; ++u) sum += g[v * size + u] * rank[u];
        next[v] = sum;
      }
      rank = std::move(next);
      history.push_back(rank);
    }
    return history;
  }

  for (std::size_t it = 0; it < iterations; ++it) {
    double dangling = 0.0;
    for (VertexId u = 0; u < n; ++u) {
      if (graph.degree(u) == 0) dangling += rank[static_cast<std::size_t>(u)];
    }
    std::vector<double> next(size, (1.0 - damping) * uniform + damping * dangling * uniform);
    for (VertexId u = 0; u < n; ++u) {
      if (graph.degree(u) == 0) continue;
      const double share = damping * rank[static_cast<std::size_t>(u)] / static_cast<double>(graph.degree(u));
      for (VertexId v : graph.neighbors(u)) next[static_cast<std::size_t>(v)] += share;
    }
    rank = std::move(next);
    history.push_back(rank);
  }
  return history;
}

std::vector<double> pagerank(const Graph& graph, double damping, std::size_t iterations) {
  auto history = pagerank_history(graph, damping, iterations);
  if (history.empty()) {
    const auto n = static_cast<std::size_t>(graph.num_vertices());
    return std::vector<double>(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  }
  return history.back();
}

}  // namespace blockgraph::oracle
