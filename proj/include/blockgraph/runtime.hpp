#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "blockgraph/algorithm.hpp"
#include "blockgraph/attributes.hpp"
#include "blockgraph/block.hpp"
#include "blockgraph/partition.hpp"

namespace blockgraph {

struct RunConfig {
  Mode mode = Mode::collaborative;
  unsigned host_workers = default_concurrency();
  unsigned device_lanes = 4;
  // Threads a device lane uses inside one task.
  unsigned device_lane_width = default_concurrency();
  // Host workers never claim the heaviest ceil(cutoff_fraction * |T|) tasks.
  double cutoff_fraction = 0.0;
  std::size_t arena_budget_bytes = std::size_t{1} << 30;
  // Free arena space below this fraction of the budget forces a clear.
  double arena_threshold_fraction = 0.10;
  std::uint64_t seed = 1;
  bool record_timeline = true;

  // Defaults overridden by BLOCKGRAPH_HOST_WORKERS, BLOCKGRAPH_DEVICE_LANES
  // and BLOCKGRAPH_ARENA_BYTES when set.
  static RunConfig from_environment();
  static unsigned default_concurrency() noexcept;

  // Throws ConfigError for settings that cannot make progress.
  void validate() const;
};

struct Task {
  BlockList list;
  double weight = 0.0;
  Target target = Target::either;
};

struct TaskRecord {
  std::size_t iteration;
  std::size_t list_id;
  std::size_t sorted_index;
  double weight;
  Target executor;
  unsigned executor_index;
};

struct TimelineEvent {
  enum class Kind { admit, prefetch, begin, end };
  std::uint64_t sequence;
  std::size_t iteration;
  std::size_t list_id;
  unsigned lane;
  Kind kind;
};

struct RunStats {
  std::size_t iterations = 0;
  std::size_t host_tasks = 0;
  std::size_t device_tasks = 0;
  std::size_t bytes_copied = 0;
  std::size_t bytes_synced = 0;
  std::size_t evictions = 0;
  std::size_t arena_high_water = 0;
  // Wall time of the whole iterative loop, arena copies included.
  double kernel_seconds = 0.0;
  std::vector<double> iteration_seconds;
  std::vector<std::size_t> composed_per_iteration;
  std::vector<std::size_t> executed_per_iteration;
  std::vector<Mode> mode_per_iteration;
  std::vector<TaskRecord> tasks;
  std::vector<TimelineEvent> timeline;
};

// Bounded model of device memory. Blocks are copied in before a device lane
// runs a task and stay resident until a clear. A clear waits for every
// admitted task to be released, then drops all resident blocks.
class DeviceArena {
 public:
  struct Admission {
    // The task's blocks as resident copies, in list order.
    std::vector<const Block*> blocks;
    std::size_t bytes_copied = 0;
    bool evicted = false;
  };

  explicit DeviceArena(std::size_t budget_bytes, double threshold_fraction = 0.10);

  // Blocks until the list is resident. Throws ArenaError when the list alone
  // exceeds the budget. The caller must hold no unreleased admission.
  Admission admit(const BlockList& list);
  // Admits without waiting or clearing; nullopt when that is not possible.
  std::optional<Admission> try_admit(const BlockList& list);
  // Marks one admitted task as completed.
  void release();

  std::size_t budget() const noexcept { return budget_; }
  std::size_t resident_bytes() const;
  std::size_t high_water() const;
  std::size_t bytes_copied() const;
  std::size_t evictions() const;
  std::size_t in_flight() const;

 private:
  std::size_t missing_bytes(const BlockList& list) const;
  bool needs_clear(std::size_t missing) const;
  Admission copy_in(const BlockList& list);
  void clear();

  std::size_t budget_;
  double threshold_fraction_;
  mutable std::mutex mutex_;
  std::condition_variable changed_;
  std::unordered_map<BlockId, std::unique_ptr<const Block>> resident_;
  std::size_t resident_bytes_ = 0;
  std::size_t high_water_ = 0;
  std::size_t bytes_copied_ = 0;
  std::size_t evictions_ = 0;
  std::size_t in_flight_ = 0;
  bool draining_ = false;
};

// Upper bound on candidate tuples a generic predicate may be asked about.
inline constexpr double kCompositionGuard = 1e7;

// custom_composer output verbatim, or every ordered list_size-tuple of block
// IDs in lexicographic order that generic_predicate accepts. List IDs are
// positions in the returned vector.
std::vector<BlockList> compose_block_lists(const AlgorithmSpec& spec, const BlockGrid& grid,
                                           const AttributeStore& attributes, std::size_t iteration = 0);
std::vector<BlockList> compose_block_lists(const AlgorithmSpec& spec, const BlockGrid& grid);

// Weight by spec.estimator or total edge count; heaviest first, ties by list ID.
std::vector<Task> estimate_and_sort(std::vector<BlockList> lists, const AlgorithmSpec& spec);

// Write-back of device-visible attribute state after a dispatch phase.
// Returns the bytes accounted; zero when no device task ran.
std::size_t sync_globals(const AttributeStore& attributes, bool device_ran);

struct RunResult {
  AttributeStore attributes;
  RunStats stats;
};

// Iterates before_iteration, compose, sort, dispatch, after_iteration until
// after_iteration returns false.
RunResult run(const AlgorithmSpec& spec, const BlockGrid& grid, const RunConfig& config,
              AttributeStore attributes);

}  // namespace blockgraph
