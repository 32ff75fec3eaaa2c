#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blockgraph/io.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace blockgraph;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "blockgraph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> records;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) records.push_back(json::parse(line));
  }
  return records;
}

}  // namespace

TEST_CASE("convert round trip and errors") {
  test::TempDir dir;
  std::ofstream(dir / "g.tsv") << "0\t1\n1\t2\n2\t3\n3\t1\n";
  CHECK(invoke({"convert", (dir / "g.tsv").string(), (dir / "g.bin").string()}).code == cli::kExitOk);
  CHECK(invoke({"convert", (dir / "g.bin").string(), (dir / "back.tsv").string()}).code == cli::kExitOk);
  CHECK(io::read_edge_list(dir / "back.tsv") == io::read_edge_list(dir / "g.tsv"));
  CHECK(io::read_binary(dir / "g.bin") == io::read_edge_list(dir / "g.tsv"));

  const auto missing = invoke({"convert", (dir / "nope.tsv").string(), (dir / "x.bin").string()});
  CHECK(missing.code == cli::kExitIo);
  CHECK_FALSE(missing.err.empty());

  std::ofstream(dir / "g.mtx") << "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n2 3\n";
  CHECK(invoke({"convert", (dir / "g.mtx").string(), (dir / "mtx.bin").string(), "--one-indexed"}).code == 0);
  CHECK(io::read_binary(dir / "mtx.bin") == generate::path(3));
}

TEST_CASE("run examples") {
  test::TempDir dir;
  io::write_binary(test::k3(), dir / "k3.bin");
  io::write_binary(test::p4(), dir / "p4.bin");
  io::write_binary(test::two_k2(), dir / "two_k2.bin");

  const auto tc = invoke({"run", "tc", (dir / "k3.bin").string(), "--format", "json"});
  REQUIRE(tc.code == 0);
  const json record = json::parse(tc.out);
  CHECK(record["schema"] == 1);
  CHECK(record["result"]["triangles"] == 1);
  CHECK(record["timing"].contains("kernel_seconds"));
  CHECK(record["timing"].contains("partition_seconds"));
  CHECK(record["timing"].contains("io_seconds"));

  const auto path = invoke({"run", "bfs", (dir / "p4.bin").string(), "--source", "0", "--format", "json"});
  CHECK(json::parse(path.out)["result"]["depth"] == 3);

  const auto cc = invoke({"run", "cc", (dir / "two_k2.bin").string(), "--format", "json", "--mode", "host"});
  CHECK(json::parse(cc.out)["result"]["components"] == 2);

  for (auto algo : {"pagerank", "sv"}) {
    CHECK(invoke({"run", algo, (dir / "p4.bin").string(), "--threads", "2", "--device-lanes", "1"}).code == 0);
  }
}

TEST_CASE("text and json report the same numbers") {
  test::TempDir dir;
  io::write_binary(generate::rmat(7, 8, 1), dir / "g.bin");
  const auto as_json = json::parse(invoke({"run", "tc", (dir / "g.bin").string(), "--format", "json"}).out);
  const auto as_text = invoke({"run", "tc", (dir / "g.bin").string()}).out;
  CHECK(as_text.find("result.triangles: " + as_json["result"]["triangles"].dump()) != std::string::npos);
  CHECK(as_text.find("graph.edges: " + as_json["graph"]["edges"].dump()) != std::string::npos);
}

TEST_CASE("run exit codes") {
  test::TempDir dir;
  io::write_binary(test::k3(), dir / "k3.bin");
  const std::string k3 = (dir / "k3.bin").string();
  CHECK(invoke({"run", "tc", (dir / "none.bin").string()}).code == cli::kExitIo);
  CHECK(invoke({"run", "sssp", k3}).code == cli::kExitConfig);
  CHECK(invoke({"run", "tc", k3, "--mode", "warp"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "tc", k3, "--cutoff", "0.5", "--device-lanes", "0"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "bfs", k3, "--source", "9"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "tc", k3, "--device-mem", "1", "--mode", "device"}).code == cli::kExitConfig);
  std::ofstream(dir / "bad.txt") << "0 1\nx y\n";
  CHECK(invoke({"run", "tc", (dir / "bad.txt").string()}).code == cli::kExitIo);
}

TEST_CASE("bench emits one record per run plus a summary") {
  test::TempDir dir;
  io::write_binary(generate::rmat(7, 8, 2), dir / "g.bin");
  const std::string g = (dir / "g.bin").string();

  const auto single = json_lines(invoke({"bench", "tc", g, "--repeat", "1", "--format", "json"}).out);
  REQUIRE(single.size() == 2);
  CHECK(single[1]["type"] == "summary");
  CHECK(single[1]["kernel_seconds"]["median"] == single[0]["timing"]["kernel_seconds"]);

  const auto ten = invoke({"bench", "pagerank", g, "--format", "json"});
  CHECK(ten.code == 0);
  const auto records = json_lines(ten.out);
  REQUIRE(records.size() == 11);
  std::vector<double> times;
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(records[i]["type"] == "run");
    CHECK(records[i]["schema"] == 1);
    times.push_back(records[i]["timing"]["kernel_seconds"]);
  }
  CHECK(records[10]["kernel_seconds"]["median"].get<double>() == doctest::Approx(cli::median(times)));
  CHECK(records[10]["consistent"] == true);
}

TEST_CASE("median") {
  CHECK(cli::median({3.0}) == 3.0);
  CHECK(cli::median({4.0, 1.0, 3.0}) == 3.0);
  CHECK(cli::median({4.0, 1.0, 3.0, 2.0}) == 2.5);
}

TEST_CASE("default bfs source is the smallest vertex of the largest component") {
  const Graph g = Graph::from_edges(7, {{0, 1}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(cli::default_source(g, test::config(Mode::host_only)) == 2);
}

TEST_CASE("partition-stats and generate") {
  test::TempDir dir;
  CHECK(invoke({"generate", "rmat", (dir / "r.bin").string(), "--scale", "6"}).code == 0);
  CHECK(io::read_binary(dir / "r.bin").num_vertices() == 64);
  CHECK(invoke({"generate", "er", (dir / "e.txt").string(), "-n", "30", "-p", "0.2"}).code == 0);
  const auto stats = invoke({"partition-stats", (dir / "r.bin").string(), "--blocks", "3"});
  CHECK(stats.code == 0);
  CHECK(stats.out.find("imbalance") != std::string::npos);
  CHECK(invoke({}).code == cli::kExitConfig);
}
