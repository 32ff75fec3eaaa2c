#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockgraph/graph.hpp"
#include "blockgraph/runtime.hpp"

namespace blockgraph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitKernel = 4;
inline constexpr int kSchemaVersion = 1;

enum class Partitioner { symmetric, optimal_1d };

struct RunRequest {
  std::string algorithm;
  RunConfig config = RunConfig::from_environment();
  // 0 picks default_parts(config.host_workers).
  PartId parts = 0;
  Partitioner partitioner = Partitioner::symmetric;
  std::optional<VertexId> source;
};

struct RunOutcome {
  nlohmann::json result;
  RunStats stats;
  double partition_seconds = 0.0;
  // Values compared across repeated runs.
  std::vector<double> fingerprint;
  bool exact_fingerprint = true;
};

// Partitions graph as requested and runs one algorithm. Throws the library's
// error types.
RunOutcome execute(const RunRequest& request, const Graph& graph);

struct BenchReport {
  std::vector<RunOutcome> runs;
  double min_seconds = 0.0;
  double median_seconds = 0.0;
  double max_seconds = 0.0;
  bool consistent = true;
};

BenchReport bench(const RunRequest& request, const Graph& graph, std::size_t repeat);

double median(std::vector<double> values);

// Smallest vertex of the largest component.
VertexId default_source(const Graph& graph, const RunConfig& config);

nlohmann::json stats_json(const RunStats& stats);

// Entry point shared by the blockgraph tool and the tests.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blockgraph::cli
