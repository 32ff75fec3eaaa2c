#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "blockgraph/graph.hpp"

namespace blockgraph::io {

struct ParseOptions {
  bool symmetrize = true;
  bool dedupe = true;
  bool drop_self_loops = true;
  bool one_indexed = false;
  // Number of byte-range chunks parsed concurrently; 0 picks the hardware
  // concurrency.
  std::size_t chunks = 0;
};

// Parses whitespace-separated "u v [w]" lines. '#' and '%' start comment
// lines; a leading MatrixMarket size line "n n m" is recognised and skipped.
// Weights are read and discarded. Throws IoError, ParseError (with line
// number) or RangeError.
Graph parse_edge_list(std::string_view text, const ParseOptions& options = {});
Graph read_edge_list(const std::filesystem::path& path, const ParseOptions& options = {});

// Writes one "u v" line per directed edge.
void write_edge_list(const Graph& graph, const std::filesystem::path& path);

// Binary layout, little-endian:
//   "PGBB" | u64 version=1 | u64 n | u64 m | u8 id_width (4 or 8)
//   | (n+1) x u64 offsets | m x id_width adjacency
inline constexpr std::uint64_t kBinaryVersion = 1;
inline constexpr std::size_t kBinaryHeaderBytes = 4 + 8 + 8 + 8 + 1;

void write_binary(const Graph& graph, const std::filesystem::path& path);
// Throws IoError, or FormatError with kind bad_magic / unsupported_version /
// truncated / corrupt.
Graph read_binary(const std::filesystem::path& path);

std::vector<char> encode_binary(const Graph& graph);
Graph decode_binary(std::span<const char> bytes);

// Loads .bin files with read_binary and anything else as an edge list.
Graph load_graph(const std::filesystem::path& path, const ParseOptions& options = {});

struct Relabeled {
  Graph graph;
  // permutation[old_id] = new_id
  std::vector<VertexId> permutation;
};

// New IDs by non-decreasing degree, ties broken by old ID.
Relabeled degree_relabel(const Graph& graph);

}  // namespace blockgraph::io
