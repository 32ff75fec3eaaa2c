#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "blockgraph/generate.hpp"
#include "blockgraph/graph.hpp"
#include "blockgraph/partition.hpp"
#include "blockgraph/runtime.hpp"

namespace blockgraph::test {

inline Graph undirected(VertexId n, std::vector<Edge> edges) { return Graph::from_edges(n, std::move(edges)); }

inline Graph k3() { return generate::complete(3); }
inline Graph k4() { return generate::complete(4); }
inline Graph p4() { return generate::path(4); }
inline Graph two_k2() { return undirected(4, {{0, 1}, {2, 3}}); }

inline RunConfig config(Mode mode, unsigned workers = 2, unsigned lanes = 2) {
  RunConfig c;
  c.mode = mode;
  c.host_workers = workers;
  c.device_lanes = mode == Mode::host_only ? 0 : lanes;
  c.device_lane_width = 2;
  c.record_timeline = true;
  return c;
}

inline constexpr Mode kModes[] = {Mode::host_only, Mode::device_only, Mode::collaborative};

inline BlockGrid grid_of(const Graph& g, PartId p) { return build_blocks(g, symmetric_cuts(g, p)); }

// True when every reached vertex other than the source has a parent one level up
// joined to it by an edge.
inline bool valid_bfs_tree(const Graph& g, VertexId s, const std::vector<VertexId>& parent,
                           const std::vector<std::int64_t>& depth) {
  if (parent[static_cast<std::size_t>(s)] != s) return false;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (v == s || depth[i] < 0) continue;
    const VertexId u = parent[i];
    if (u < 0 || depth[static_cast<std::size_t>(u)] != depth[i] - 1) return false;
    const auto nbrs = g.neighbors(v);
    if (!std::binary_search(nbrs.begin(), nbrs.end(), u)) return false;
  }
  return true;
}

class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "blockgraph-XXXXXX").string();
    path_ = mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace blockgraph::test
