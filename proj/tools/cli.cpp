#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "blockgraph/algorithms.hpp"
#include "blockgraph/errors.hpp"
#include "blockgraph/generate.hpp"
#include "blockgraph/io.hpp"
#include "blockgraph/oracle.hpp"
#include "blockgraph/partition.hpp"

namespace blockgraph::cli {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::host_only:
      return "host";
    case Mode::device_only:
      return "device";
    case Mode::collaborative:
      return "collaborative";
  }
  return "?";
}

BlockGrid partition(const Graph& graph, const RunRequest& request) {
  const PartId p = request.parts > 0 ? request.parts : default_parts(request.config.host_workers);
  const CutVector cuts =
      request.partitioner == Partitioner::symmetric ? symmetric_cuts(graph, p) : optimal_1d_cuts(graph, p);
  return build_blocks(graph, cuts);
}

json top_ranks(const std::vector<double>& rank, std::size_t k) {
  std::vector<VertexId> order(rank.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<VertexId>(i);
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](VertexId a, VertexId b) {
                      const auto ra = rank[static_cast<std::size_t>(a)];
                      const auto rb = rank[static_cast<std::size_t>(b)];
                      return ra != rb ? ra > rb : a < b;
                    });
  json top = json::array();
  for (std::size_t i = 0; i < k; ++i) top.push_back({order[i], rank[static_cast<std::size_t>(order[i])]});
  return top;
}

json components_json(const algorithms::ComponentsResult& r) {
  std::map<VertexId, std::size_t> sizes;
  for (VertexId label : r.labels) ++sizes[label];
  std::size_t largest = 0;
  for (const auto& [label, size] : sizes) largest = std::max(largest, size);
  return {{"components", r.components}, {"largest_component", largest}};
}

// Flattens nested objects to "a.b: value" lines.
void write_text(const json& value, const std::string& prefix, std::ostream& out) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) write_text(item, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  out << prefix << ": " << value.dump() << '\n';
}

void emit(const json& record, bool as_json, std::ostream& out) {
  if (as_json) {
    out << record.dump() << '\n';
  } else {
    write_text(record, "", out);
    out << '\n';
  }
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

VertexId default_source(const Graph& graph, const RunConfig& config) {
  if (graph.num_vertices() == 0) return 0;
  std::vector<VertexId> labels;
  if (graph.num_vertices() <= oracle::kDenseLimit) {
    labels = oracle::components(graph);
  } else {
    RunConfig host = config;
    host.mode = Mode::host_only;
    if (host.host_workers == 0) host.host_workers = 1;
    labels = algorithms::afforest_components(graph, partition(graph, RunRequest{"cc", host, 0, Partitioner::symmetric, std::nullopt}), host).labels;
  }
  // Labels are component minima, so the first vertex of a class is its label.
  std::map<VertexId, std::size_t> sizes;
  for (VertexId label : labels) ++sizes[label];
  VertexId best = labels.front();
  for (const auto& [label, size] : sizes) {
    if (size > sizes[best]) best = label;
  }
  return best;
}

json stats_json(const RunStats& stats) {
  std::vector<std::string> modes;
  for (Mode m : stats.mode_per_iteration) modes.emplace_back(mode_name(m));
  return {{"iterations", stats.iterations},
          {"host_tasks", stats.host_tasks},
          {"device_tasks", stats.device_tasks},
          {"bytes_copied", stats.bytes_copied},
          {"bytes_synced", stats.bytes_synced},
          {"evictions", stats.evictions},
          {"arena_high_water", stats.arena_high_water},
          {"kernel_seconds", stats.kernel_seconds},
          {"iteration_seconds", stats.iteration_seconds},
          {"modes", modes}};
}

RunOutcome execute(const RunRequest& request, const Graph& graph) {
  const std::string& algo = request.algorithm;
  if (!algorithms::is_registered(algo)) throw ConfigError("unknown algorithm '" + algo + "'");
  const RunConfig& config = request.config;
  RunOutcome outcome;
  const auto partition_start = Clock::now();

  if (algo == "tc") {
    const auto relabeled = io::degree_relabel(graph);
    const PartId p = request.parts > 0 ? request.parts : default_parts(config.host_workers);
    const CutVector cuts = request.partitioner == Partitioner::symmetric ? symmetric_cuts(relabeled.graph, p)
                                                                         : optimal_1d_cuts(relabeled.graph, p);
    const BlockGrid grid = upper_triangular_view(build_blocks(relabeled.graph, cuts));
    outcome.partition_seconds = seconds_since(partition_start);
    auto r = algorithms::triangle_count(grid, config);
    outcome.result = {{"triangles", r.triangles}};
    outcome.fingerprint = {static_cast<double>(r.triangles)};
    outcome.stats = std::move(r.stats);
    return outcome;
  }

  const BlockGrid grid = partition(graph, request);
  outcome.partition_seconds = seconds_since(partition_start);

  if (algo == "sv" || algo == "cc") {
    auto r = algo == "sv" ? algorithms::sv_components(graph, grid, config)
                          : algorithms::afforest_components(graph, grid, config);
    outcome.result = components_json(r);
    if (algo == "sv") outcome.result["hook_rounds"] = r.hook_rounds;
    outcome.fingerprint.assign(r.labels.begin(), r.labels.end());
    outcome.stats = std::move(r.stats);
  } else if (algo == "bfs") {
    const VertexId source = request.source ? *request.source : default_source(graph, config);
    auto r = algorithms::bfs(graph, grid, config, source);
    std::vector<std::size_t> histogram(r.levels, 0);
    std::size_t reached = 0;
    for (auto d : r.depth) {
      if (d < 0) continue;
      ++reached;
      ++histogram[static_cast<std::size_t>(d)];
    }
    outcome.result = {{"source", source},
                      {"depth", r.levels - 1},
                      {"reached", reached},
                      {"level_sizes", histogram},
                      {"edges_traversed", r.edges_traversed}};
    outcome.fingerprint.assign(r.depth.begin(), r.depth.end());
    outcome.stats = std::move(r.stats);
  } else {
    auto r = algorithms::pagerank(graph, grid, config);
    outcome.result = {{"iterations", r.iterations}, {"delta", r.last_delta}, {"top", top_ranks(r.rank, 10)}};
    outcome.fingerprint = std::move(r.rank);
    outcome.exact_fingerprint = false;
    outcome.stats = std::move(r.stats);
  }
  return outcome;
}

BenchReport bench(const RunRequest& request, const Graph& graph, std::size_t repeat) {
  BenchReport report;
  std::vector<double> times;
  for (std::size_t i = 0; i < repeat; ++i) {
    report.runs.push_back(execute(request, graph));
    times.push_back(report.runs.back().stats.kernel_seconds);
  }
  if (!times.empty()) {
    report.min_seconds = *std::min_element(times.begin(), times.end());
    report.max_seconds = *std::max_element(times.begin(), times.end());
    report.median_seconds = median(times);
  }
  // Every run must reproduce the first one; floating-point results may
  // differ by reassociation of atomic adds only.
  for (std::size_t i = 1; i < report.runs.size(); ++i) {
    const auto& a = report.runs.front();
    const auto& b = report.runs[i];
    if (a.fingerprint.size() != b.fingerprint.size()) {
      report.consistent = false;
      continue;
    }
    for (std::size_t k = 0; k < a.fingerprint.size(); ++k) {
      const double diff = std::abs(a.fingerprint[k] - b.fingerprint[k]);
      if (a.exact_fingerprint ? diff != 0.0 : diff > 1e-12) report.consistent = false;
    }
  }
  return report;
}

namespace {

struct Shared {
  std::string mode = "collaborative";
  std::optional<unsigned> threads;
  std::optional<unsigned> lanes;
  std::optional<unsigned> width;
  std::optional<std::size_t> device_mem;
  double cutoff = 0.0;
  PartId parts = 0;
  std::string partitioner = "symmetric";
  std::optional<VertexId> source;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool one_indexed = false;
};

void add_run_flags(CLI::App& cmd, Shared& s) {
  cmd.add_option("--mode", s.mode, "host, device or collaborative")
      ->check(CLI::IsMember({"host", "device", "collaborative"}));
  cmd.add_option("--blocks", s.parts, "parts per dimension (0: from worker count)");
  cmd.add_option("--partitioner", s.partitioner)->check(CLI::IsMember({"symmetric", "optimal-1d"}));
  cmd.add_option("--threads", s.threads, "host workers");
  cmd.add_option("--device-lanes", s.lanes);
  cmd.add_option("--device-width", s.width, "threads per device lane");
  cmd.add_option("--device-mem", s.device_mem, "device arena budget in bytes");
  cmd.add_option("--cutoff", s.cutoff, "fraction of heaviest tasks reserved for device lanes")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--source", s.source, "BFS source vertex");
  cmd.add_option("--seed", s.seed);
  cmd.add_option("--format", s.format)->check(CLI::IsMember({"json", "text"}));
  cmd.add_flag("--one-indexed", s.one_indexed, "edge-list IDs start at 1");
}

RunRequest make_request(const std::string& algo, const Shared& s) {
  RunRequest request;
  request.algorithm = algo;
  RunConfig& c = request.config;
  c.mode = s.mode == "host" ? Mode::host_only : s.mode == "device" ? Mode::device_only : Mode::collaborative;
  if (s.threads) c.host_workers = *s.threads;
  if (s.lanes) c.device_lanes = *s.lanes;
  if (s.width) c.device_lane_width = *s.width;
  if (s.device_mem) c.arena_budget_bytes = *s.device_mem;
  c.cutoff_fraction = s.cutoff;
  c.seed = s.seed;
  c.record_timeline = false;
  request.parts = s.parts;
  request.partitioner = s.partitioner == "symmetric" ? Partitioner::symmetric : Partitioner::optimal_1d;
  request.source = s.source;
  return request;
}

json run_record(const RunRequest& request, const Graph& graph, const RunOutcome& outcome, double io_seconds) {
  const auto& c = request.config;
  return {{"schema", kSchemaVersion},
          {"algorithm", request.algorithm},
          {"graph", {{"vertices", graph.num_vertices()}, {"edges", graph.num_edges()}}},
          {"config",
           {{"mode", mode_name(c.mode)},
            {"host_workers", c.host_workers},
            {"device_lanes", c.device_lanes},
            {"device_width", c.device_lane_width},
            {"arena_bytes", c.arena_budget_bytes},
            {"cutoff", c.cutoff_fraction},
            {"seed", c.seed}}},
          {"result", outcome.result},
          {"timing",
           {{"io_seconds", io_seconds},
            {"partition_seconds", outcome.partition_seconds},
            {"kernel_seconds", outcome.stats.kernel_seconds}}},
          {"stats", stats_json(outcome.stats)}};
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-based graph analytics: partition, schedule and run graph kernels"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  bool directed = false;
  bool keep_self_loops = false;
  bool keep_duplicates = false;
  bool one_indexed = false;
  auto* convert = app.add_subcommand("convert", "convert between edge-list text and the binary format");
  convert->add_option("input", input)->required();
  convert->add_option("output", output, "a .bin path writes binary, anything else an edge list")->required();
  convert->add_flag("--directed", directed, "do not add reverse edges");
  convert->add_flag("--keep-self-loops", keep_self_loops);
  convert->add_flag("--keep-duplicates", keep_duplicates);
  convert->add_flag("--one-indexed", one_indexed);

  Shared run_flags;
  std::string run_algo;
  std::string run_graph;
  auto* run_cmd = app.add_subcommand("run", "run one algorithm and report results and run statistics");
  run_cmd->add_option("algorithm", run_algo, "pagerank, sv, cc, bfs or tc")->required();
  run_cmd->add_option("graph", run_graph)->required();
  add_run_flags(*run_cmd, run_flags);

  Shared bench_flags;
  std::string bench_algo;
  std::string bench_graph;
  std::size_t repeat = 10;
  auto* bench_cmd = app.add_subcommand("bench", "repeat a run and report min/median/max kernel time");
  bench_cmd->add_option("algorithm", bench_algo)->required();
  bench_cmd->add_option("graph", bench_graph)->required();
  bench_cmd->add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  add_run_flags(*bench_cmd, bench_flags);

  std::string stats_graph;
  PartId stats_parts = 0;
  std::string stats_partitioner = "symmetric";
  bool stats_one_indexed = false;
  auto* stats_cmd = app.add_subcommand("partition-stats", "print per-block sizes and load imbalance");
  stats_cmd->add_option("graph", stats_graph)->required();
  stats_cmd->add_option("--blocks", stats_parts);
  stats_cmd->add_option("--partitioner", stats_partitioner)->check(CLI::IsMember({"symmetric", "optimal-1d"}));
  stats_cmd->add_flag("--one-indexed", stats_one_indexed);

  std::string gen_kind;
  std::string gen_output;
  int gen_scale = 10;
  int gen_edge_factor = 16;
  VertexId gen_n = 100;
  double gen_p = 0.05;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic graph");
  gen_cmd->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"rmat", "er"}));
  gen_cmd->add_option("output", gen_output)->required();
  gen_cmd->add_option("--scale", gen_scale);
  gen_cmd->add_option("--edge-factor", gen_edge_factor);
  gen_cmd->add_option("-n", gen_n);
  gen_cmd->add_option("-p", gen_p);
  gen_cmd->add_option("--seed", gen_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }

  const auto write_graph = [](const Graph& g, const std::string& path) {
    if (std::filesystem::path(path).extension() == ".bin") {
      io::write_binary(g, path);
    } else {
      io::write_edge_list(g, path);
    }
  };

  if (*convert) {
    try {
      io::ParseOptions options;
      options.symmetrize = !directed;
      options.drop_self_loops = !keep_self_loops;
      options.dedupe = !keep_duplicates;
      options.one_indexed = one_indexed;
      write_graph(io::load_graph(input, options), output);
    } catch (const Error& e) {
      err << "convert: " << e.what() << '\n';
      return kExitIo;
    }
    return kExitOk;
  }

  if (*gen_cmd) {
    try {
      const Graph g = gen_kind == "rmat" ? generate::rmat(gen_scale, gen_edge_factor, gen_seed)
                                         : generate::erdos_renyi(gen_n, gen_p, gen_seed);
      write_graph(g, gen_output);
    } catch (const Error& e) {
      err << "generate: " << e.what() << '\n';
      return kExitIo;
    }
    return kExitOk;
  }

  const bool is_run = run_cmd->parsed();
  const bool is_bench = bench_cmd->parsed();
  const std::string& graph_path = is_run ? run_graph : is_bench ? bench_graph : stats_graph;
  Graph graph;
  const auto io_start = Clock::now();
  try {
    io::ParseOptions options;
    options.one_indexed = is_run ? run_flags.one_indexed : is_bench ? bench_flags.one_indexed : stats_one_indexed;
    graph = io::load_graph(graph_path, options);
  } catch (const Error& e) {
    err << "load: " << e.what() << '\n';
    return kExitIo;
  }
  const double io_seconds = seconds_since(io_start);

  try {
    if (*stats_cmd) {
      RunRequest request;
      request.parts = stats_parts;
      request.partitioner = stats_partitioner == "symmetric" ? Partitioner::symmetric : Partitioner::optimal_1d;
      const auto stats = partition_stats(partition(graph, request));
      const PartId p = stats.blocks.empty() ? 0 : stats.blocks.back().row + 1;
      out << "parts " << p << " vertices " << graph.num_vertices() << " edges " << graph.num_edges() << '\n';
      out << "block row col sources destinations edges\n";
      for (const auto& b : stats.blocks) {
        out << b.id << ' ' << b.row << ' ' << b.col << ' ' << b.sources << ' ' << b.destinations << ' ' << b.edges
            << '\n';
      }
      out << "max_edges " << stats.max_edges << '\n' << "imbalance " << stats.imbalance << '\n';
      return kExitOk;
    }

    const Shared& flags = is_run ? run_flags : bench_flags;
    const RunRequest request = make_request(is_run ? run_algo : bench_algo, flags);
    request.config.validate();
    const bool as_json = flags.format == "json";

    if (is_run) {
      emit(run_record(request, graph, execute(request, graph), io_seconds), as_json, out);
      return kExitOk;
    }

    const BenchReport report = bench(request, graph, repeat);
    for (std::size_t i = 0; i < report.runs.size(); ++i) {
      json record = run_record(request, graph, report.runs[i], io_seconds);
      record["type"] = "run";
      record["run"] = i;
      emit(record, as_json, out);
    }
    json summary = {{"schema", kSchemaVersion},
                    {"type", "summary"},
                    {"algorithm", request.algorithm},
                    {"repeat", report.runs.size()},
                    {"kernel_seconds",
                     {{"min", report.min_seconds}, {"median", report.median_seconds}, {"max", report.max_seconds}}},
                    {"consistent", report.consistent}};
    emit(summary, as_json, out);
    if (!report.consistent) {
      err << "bench: results differ between runs\n";
      return kExitKernel;
    }
    return kExitOk;
  } catch (const KernelError& e) {
    err << "kernel: " << e.what() << '\n';
    return kExitKernel;
  } catch (const Error& e) {
    err << "config: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace blockgraph::cli
