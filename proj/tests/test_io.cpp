#include <doctest.h>

#include <fstream>
#include <random>

#include "blockgraph/errors.hpp"
#include "blockgraph/io.hpp"
#include "support.hpp"

using namespace blockgraph;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

void put_u64(std::string& s, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

TEST_CASE("parse_edge_list examples") {
  const Graph k3 = io::parse_edge_list("0 1\n1 2\n2 0\n");
  CHECK(k3.num_vertices() == 3);
  CHECK(k3.num_edges() == 6);
  CHECK(k3 == test::k3());

  const Graph single = io::parse_edge_list("0 1\n0 1\n");
  CHECK(single.num_edges() == 2);

  const Graph shifted = io::parse_edge_list("1 2\n2 3\n", {.symmetrize = false, .one_indexed = true});
  CHECK(shifted.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("parser options, comments and weights") {
  const std::string text = "# snap header\n% mm comment\n0 1 0.5\n\n1 1\r\n2 0 3\n";
  const Graph g = io::parse_edge_list(text);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 4);

  const Graph raw = io::parse_edge_list("0 1\n0 1\n1 1\n",
                                        {.symmetrize = false, .dedupe = false, .drop_self_loops = false});
  CHECK(raw.num_edges() == 3);
}

TEST_CASE("matrix market size line is skipped") {
  const std::string mm = "%%MatrixMarket matrix coordinate pattern symmetric\n4 4 3\n1 2\n2 3\n3 4\n";
  const Graph g = io::parse_edge_list(mm, {.one_indexed = true});
  CHECK(g.num_vertices() == 4);
  CHECK(g == test::p4());
}

TEST_CASE("parser errors") {
  try {
    io::parse_edge_list("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(io::parse_edge_list("0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_edge_list("0 -1\n"), ParseError);
  CHECK_THROWS_AS(io::parse_edge_list("0 99999999999999999999999\n"), RangeError);
  CHECK_THROWS_AS(io::parse_edge_list("0 1\n", {.one_indexed = true}), RangeError);
  CHECK_THROWS_AS(io::read_edge_list("/nonexistent/graph.txt"), IoError);

  // The reported line is global even when the bad line sits in a later chunk.
  std::string text;
  for (int i = 0; i < 500; ++i) text += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  text += "oops\n";
  for (std::size_t chunks : {1, 7}) {
    try {
      io::parse_edge_list(text, {.chunks = chunks});
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 501);
    }
  }
}

TEST_CASE("chunked parse matches sequential parse") {
  std::mt19937_64 rng(3);
  std::string text;
  for (int i = 0; i < 4000; ++i) {
    const auto u = rng() % 700;
    const auto v = rng() % 700;
    switch (rng() % 7) {
      case 0:
        text += "# comment run\n# more\n";
        break;
      case 1:
        text += "\n\n";
        break;
      case 2:
        text += std::to_string(u) + "\t" + std::to_string(v) + "\r\n";
        continue;
      case 3:
        text += "% another\n";
        break;
      default:
        break;
    }
    text += std::to_string(u) + " " + std::to_string(v) + " 1.0\n";
  }
  text += "\n\n\n";
  const Graph reference = io::parse_edge_list(text, {.chunks = 1});
  for (std::size_t chunks : {2, 7, 16}) {
    CAPTURE(chunks);
    CHECK(io::parse_edge_list(text, {.chunks = chunks}) == reference);
  }
  CHECK(reference.num_edges() > 0);
}

TEST_CASE("binary round trip") {
  test::TempDir dir;
  for (const Graph& g : {test::k3(), Graph{}, generate::erdos_renyi(300, 0.02, 5)}) {
    io::write_binary(g, dir / "g.bin");
    const Graph back = io::read_binary(dir / "g.bin");
    CHECK(back == g);
    CHECK(back.offsets() == g.offsets());
    CHECK(back.adjacency() == g.adjacency());
  }
  io::write_binary(Graph{}, dir / "empty.bin");
  CHECK(std::filesystem::file_size(dir / "empty.bin") == 4 + 8 + 8 + 8 + 1 + 8);

  const Graph directed = io::parse_edge_list("0 1\n", {.symmetrize = false});
  const Graph decoded = io::decode_binary(io::encode_binary(directed));
  CHECK(decoded == directed);
  CHECK_FALSE(decoded.is_symmetrized());
  CHECK(io::decode_binary(io::encode_binary(test::k3())).is_symmetrized());
}

TEST_CASE("binary format errors are distinct") {
  auto bytes = io::encode_binary(test::k3());
  const auto kind_of = [](std::span<const char> b) {
    try {
      io::decode_binary(b);
    } catch (const FormatError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(kind_of(bad_magic) == static_cast<int>(FormatError::Kind::bad_magic));

  auto bad_version = bytes;
  bad_version[4] = 2;
  CHECK(kind_of(bad_version) == static_cast<int>(FormatError::Kind::unsupported_version));

  const std::span<const char> truncated(bytes.data(), bytes.size() - 1);
  CHECK(kind_of(truncated) == static_cast<int>(FormatError::Kind::truncated));
  CHECK(kind_of(std::span<const char>(bytes.data(), 10)) == static_cast<int>(FormatError::Kind::truncated));

  auto out_of_range = bytes;
  out_of_range.back() = 9;
  CHECK(kind_of(out_of_range) == static_cast<int>(FormatError::Kind::corrupt));

  CHECK_THROWS_AS(io::read_binary("/nonexistent/g.bin"), IoError);
}

TEST_CASE("binary reader accepts 8-byte ids") {
  std::string s = "PGBB";
  put_u64(s, 1);
  put_u64(s, 2);
  put_u64(s, 2);
  s.push_back(8);
  for (std::uint64_t o : {0, 1, 2}) put_u64(s, o);
  put_u64(s, 1);
  put_u64(s, 0);
  const Graph g = io::decode_binary(std::span<const char>(s.data(), s.size()));
  CHECK(g.num_vertices() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("load_graph picks the format by extension") {
  test::TempDir dir;
  write_text(dir / "k3.txt", "0 1\n1 2\n2 0\n");
  io::write_binary(test::k3(), dir / "k3.bin");
  CHECK(io::load_graph(dir / "k3.txt") == io::load_graph(dir / "k3.bin"));
  io::write_edge_list(test::k3(), dir / "out.txt");
  CHECK(io::read_edge_list(dir / "out.txt") == test::k3());
}

TEST_CASE("degree_relabel examples") {
  const auto star = io::degree_relabel(generate::star(4));
  const auto hub = star.permutation[4];
  CHECK(hub == 4);
  CHECK(star.graph.degree(4) == 4);

  const auto ring = io::degree_relabel(generate::ring(6));
  for (VertexId v = 0; v < 6; ++v) CHECK(ring.permutation[static_cast<std::size_t>(v)] == v);

  const auto path = io::degree_relabel(test::p4());
  CHECK(path.permutation == std::vector<VertexId>{0, 2, 3, 1});
}

TEST_CASE("degree_relabel preserves the edge multiset") {
  const Graph g = generate::rmat(8, 8, 11);
  const auto r = io::degree_relabel(g);
  std::vector<Edge> mapped;
  for (const Edge& e : g.edges()) {
    mapped.push_back({r.permutation[static_cast<std::size_t>(e.u)], r.permutation[static_cast<std::size_t>(e.v)]});
  }
  std::sort(mapped.begin(), mapped.end());
  CHECK(mapped == r.graph.edges());
  for (VertexId v = 1; v < r.graph.num_vertices(); ++v) CHECK(r.graph.degree(v - 1) <= r.graph.degree(v));
}
