#include "blockgraph/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "blockgraph/errors.hpp"

namespace blockgraph::io {
namespace {

// Largest accepted vertex ID.
constexpr VertexId kMaxVertexId = (VertexId{1} << 48) - 1;

struct ChunkResult {
  std::vector<Edge> edges;
  std::size_t lines = 0;
  // Position of the first data line inside this chunk, if any.
  bool has_data = false;
  std::size_t first_data_line = 0;
  bool first_has_three = false;
  std::optional<std::pair<std::size_t, std::string>> parse_error;
  std::optional<std::pair<std::size_t, std::string>> range_error;
};

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

void parse_chunk(std::string_view text, bool one_indexed, ChunkResult& out) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    ++out.lines;
    pos = eol + 1;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#' || line[i] == '%') continue;

    std::string_view tokens[4];
    std::size_t count = 0;
    while (i < line.size()) {
      const std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (count < 4) tokens[count] = line.substr(start, i - start);
      ++count;
      while (i < line.size() && is_space(line[i])) ++i;
    }
    if (count < 2 || count > 3) {
      out.parse_error.emplace(out.lines, "expected \"u v [w]\", found " + std::to_string(count) + " tokens");
      return;
    }

    VertexId ids[2];
    for (int k = 0; k < 2; ++k) {
      const auto token = tokens[k];
      std::uint64_t value = 0;
      auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec == std::errc::result_out_of_range) {
        out.range_error.emplace(out.lines, "vertex ID '" + std::string(token) + "' overflows");
        return;
      }
      if (ec != std::errc{} || end != token.data() + token.size()) {
        out.parse_error.emplace(out.lines, "malformed vertex ID '" + std::string(token) + "'");
        return;
      }
      if (one_indexed) {
        if (value == 0) {
          out.range_error.emplace(out.lines, "vertex ID 0 in a one-indexed file");
          return;
        }
        --value;
      }
      if (value > static_cast<std::uint64_t>(kMaxVertexId)) {
        out.range_error.emplace(out.lines, "vertex ID '" + std::string(token) + "' exceeds the supported range");
        return;
      }
      ids[k] = static_cast<VertexId>(value);
    }
    if (count == 3) {
      // Weights are validated and dropped.
      const auto token = tokens[2];
      double weight = 0;
      auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), weight);
      if (ec == std::errc::invalid_argument || end != token.data() + token.size()) {
        out.parse_error.emplace(out.lines, "malformed weight '" + std::string(token) + "'");
        return;
      }
    }
    if (!out.has_data) {
      out.has_data = true;
      out.first_data_line = out.lines;
      out.first_has_three = count == 3;
    }
    out.edges.push_back({ids[0], ids[1]});
  }
}

// Chunk boundaries: each start after the first is moved past the next newline.
std::vector<std::size_t> chunk_starts(std::string_view text, std::size_t chunks) {
  std::vector<std::size_t> starts{0};
  for (std::size_t c = 1; c < chunks; ++c) {
    std::size_t at = text.size() * c / chunks;
    at = std::max(at, starts.back());
    if (at > 0 && at < text.size() && text[at - 1] != '\n') {
      const std::size_t nl = text.find('\n', at);
      at = nl == std::string_view::npos ? text.size() : nl + 1;
    }
    starts.push_back(at);
  }
  starts.push_back(text.size());
  return starts;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string data;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size < 0) throw IoError("cannot size '" + path.string() + "'");
  data.resize(static_cast<std::size_t>(size));
  in.seekg(0);
  in.read(data.data(), static_cast<std::streamsize>(data.size()));
  if (!in && !data.empty()) throw IoError("short read on '" + path.string() + "'");
  return data;
}

void put_u64(std::vector<char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le(const char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{static_cast<unsigned char>(p[i])} << (8 * i);
  return v;
}

}  // namespace

Graph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::size_t chunks = options.chunks == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.chunks;
  chunks = std::max<std::size_t>(1, std::min(chunks, text.size() / 64 + 1));

  const auto starts = chunk_starts(text, chunks);
  std::vector<ChunkResult> results(chunks);
  {
    std::vector<std::jthread> workers;
    for (std::size_t c = 1; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        parse_chunk(text.substr(starts[c], starts[c + 1] - starts[c]), options.one_indexed, results[c]);
      });
    }
    parse_chunk(text.substr(starts[0], starts[1] - starts[0]), options.one_indexed, results[0]);
  }

  // Report the earliest failing line across chunks.
  std::size_t lines_before = 0;
  for (auto& r : results) {
    if (r.parse_error) throw ParseError(r.parse_error->second, lines_before + r.parse_error->first);
    if (r.range_error) {
      throw RangeError("line " + std::to_string(lines_before + r.range_error->first) + ": " + r.range_error->second);
    }
    lines_before += r.lines;
  }

  std::size_t total = 0;
  for (const auto& r : results) total += r.edges.size();
  std::vector<Edge> edges;
  edges.reserve(total);
  const ChunkResult* first = nullptr;
  for (auto& r : results) {
    if (!first && r.has_data) first = &r;
    edges.insert(edges.end(), r.edges.begin(), r.edges.end());
    r.edges = {};
  }

  VertexId max_id = -1;
  for (std::size_t i = 0; i < edges.size(); ++i) max_id = std::max({max_id, edges[i].u, edges[i].v});
  VertexId n = max_id + 1;

  // MatrixMarket size line: "n n m" with every other ID inside [0, n).
  if (first && first->first_has_three && edges.front().u == edges.front().v) {
    const VertexId declared = edges.front().u + (options.one_indexed ? 1 : 0);
    VertexId rest_max = -1;
    for (std::size_t i = 1; i < edges.size(); ++i) rest_max = std::max({rest_max, edges[i].u, edges[i].v});
    if (rest_max < declared) {
      edges.erase(edges.begin());
      n = declared;
    }
  }

  BuildOptions build;
  build.symmetrize = options.symmetrize;
  build.dedupe = options.dedupe;
  build.drop_self_loops = options.drop_self_loops;
  return Graph::from_edges(n, std::move(edges), build);
}

Graph read_edge_list(const std::filesystem::path& path, const ParseOptions& options) {
  const std::string text = read_file(path);
  return parse_edge_list(text, options);
}

void write_edge_list(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  std::string buffer;
  for (VertexId u = 0; u < graph.num_vertices(); ++u) {
    for (VertexId v : graph.neighbors(u)) {
      buffer += std::to_string(u);
      buffer += ' ';
      buffer += std::to_string(v);
      buffer += '\n';
    }
    if (buffer.size() > (1u << 20)) {
      out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
      buffer.clear();
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw IoError("write failed on '" + path.string() + "'");
}

std::vector<char> encode_binary(const Graph& graph) {
  const auto n = static_cast<std::uint64_t>(graph.num_vertices());
  const auto m = static_cast<std::uint64_t>(graph.num_edges());
  const int width = n < (std::uint64_t{1} << 32) ? 4 : 8;
  std::vector<char> out;
  out.reserve(kBinaryHeaderBytes + (n + 1) * 8 + m * static_cast<std::uint64_t>(width));
  for (char c : std::string_view("PGBB")) out.push_back(c);
  put_u64(out, kBinaryVersion);
  put_u64(out, n);
  put_u64(out, m);
  out.push_back(static_cast<char>(width));
  for (EdgeId o : graph.offsets()) put_u64(out, static_cast<std::uint64_t>(o));
  for (VertexId v : graph.adjacency()) {
    for (int i = 0; i < width; ++i) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
  }
  return out;
}

Graph decode_binary(std::span<const char> bytes) {
  using Kind = FormatError::Kind;
  if (bytes.size() < 4) throw FormatError(Kind::truncated, "file shorter than the magic number");
  if (std::memcmp(bytes.data(), "PGBB", 4) != 0) throw FormatError(Kind::bad_magic, "bad magic number");
  if (bytes.size() < kBinaryHeaderBytes) throw FormatError(Kind::truncated, "truncated header");
  const std::uint64_t version = get_le(bytes.data() + 4, 8);
  if (version != kBinaryVersion) {
    throw FormatError(Kind::unsupported_version, "unsupported version " + std::to_string(version));
  }
  const std::uint64_t n = get_le(bytes.data() + 12, 8);
  const std::uint64_t m = get_le(bytes.data() + 20, 8);
  const int width = static_cast<unsigned char>(bytes[28]);
  if (width != 4 && width != 8) throw FormatError(Kind::corrupt, "id width " + std::to_string(width));
  if (n > static_cast<std::uint64_t>(kMaxVertexId) || m > static_cast<std::uint64_t>(kMaxVertexId)) {
    throw FormatError(Kind::corrupt, "vertex or edge count out of range");
  }
  const std::uint64_t expected = kBinaryHeaderBytes + (n + 1) * 8 + m * static_cast<std::uint64_t>(width);
  if (bytes.size() < expected) throw FormatError(Kind::truncated, "truncated body");
  if (bytes.size() > expected) throw FormatError(Kind::corrupt, "trailing bytes after adjacency");

  const char* p = bytes.data() + kBinaryHeaderBytes;
  std::vector<EdgeId> offsets(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i, p += 8) {
    offsets[i] = static_cast<EdgeId>(get_le(p, 8));
    if (i > 0 && offsets[i] < offsets[i - 1]) throw FormatError(Kind::corrupt, "offsets decrease");
  }
  if (offsets[0] != 0 || static_cast<std::uint64_t>(offsets[n]) != m) {
    throw FormatError(Kind::corrupt, "offsets do not span the adjacency");
  }
  std::vector<VertexId> adjacency(m);
  for (std::uint64_t i = 0; i < m; ++i, p += width) {
    const std::uint64_t v = get_le(p, width);
    if (v >= n) throw FormatError(Kind::corrupt, "adjacency entry out of range");
    adjacency[i] = static_cast<VertexId>(v);
  }
  // Symmetry is not stored in the file.
  bool symmetric = true;
  for (std::uint64_t u = 0; u < n && symmetric; ++u) {
    for (EdgeId i = offsets[u]; i < offsets[u + 1]; ++i) {
      const auto v = static_cast<std::size_t>(adjacency[static_cast<std::size_t>(i)]);
      if (!std::binary_search(adjacency.begin() + offsets[v], adjacency.begin() + offsets[v + 1],
                              static_cast<VertexId>(u))) {
        symmetric = false;
        break;
      }
    }
  }
  return Graph(std::move(offsets), std::move(adjacency), symmetric);
}

void write_binary(const Graph& graph, const std::filesystem::path& path) {
  const auto bytes = encode_binary(graph);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed on '" + path.string() + "'");
}

Graph read_binary(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  return decode_binary(std::span<const char>(data.data(), data.size()));
}

Graph load_graph(const std::filesystem::path& path, const ParseOptions& options) {
  if (path.extension() == ".bin") return read_binary(path);
  return read_edge_list(path, options);
}

Relabeled degree_relabel(const Graph& graph) {
  const VertexId n = graph.num_vertices();
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return graph.degree(a) < graph.degree(b); });
  std::vector<VertexId> permutation(static_cast<std::size_t>(n));
  for (VertexId i = 0; i < n; ++i) permutation[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::vector<EdgeId> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + graph.degree(order[static_cast<std::size_t>(i)]);
  std::vector<VertexId> adjacency(static_cast<std::size_t>(graph.num_edges()));
  for (VertexId i = 0; i < n; ++i) {
    auto out = adjacency.begin() + offsets[i];
    for (VertexId v : graph.neighbors(order[static_cast<std::size_t>(i)])) *out++ = permutation[static_cast<std::size_t>(v)];
    std::sort(adjacency.begin() + offsets[i], adjacency.begin() + offsets[i + 1]);
  }
  return {Graph(std::move(offsets), std::move(adjacency), graph.is_symmetrized()), std::move(permutation)};
}

}  // namespace blockgraph::io
