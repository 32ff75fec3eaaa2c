#include "blockgraph/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "blockgraph/errors.hpp"

namespace blockgraph {

// ---- RunConfig --------------------------------------------------------------

unsigned RunConfig::default_concurrency() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

namespace {

std::optional<unsigned long long> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw ConfigError(std::string(name) + " is not a number: '" + raw + "'");
  return value;
}

}  // namespace

RunConfig RunConfig::from_environment() {
  RunConfig config;
  if (auto v = env_number("BLOCKGRAPH_HOST_WORKERS")) config.host_workers = static_cast<unsigned>(*v);
  if (auto v = env_number("BLOCKGRAPH_DEVICE_LANES")) config.device_lanes = static_cast<unsigned>(*v);
  if (auto v = env_number("BLOCKGRAPH_ARENA_BYTES")) config.arena_budget_bytes = static_cast<std::size_t>(*v);
  return config;
}

void RunConfig::validate() const {
  if (!(cutoff_fraction >= 0.0 && cutoff_fraction <= 1.0)) throw ConfigError("cutoff fraction must lie in [0, 1]");
  if (!(arena_threshold_fraction >= 0.0 && arena_threshold_fraction < 1.0)) {
    throw ConfigError("arena threshold fraction must lie in [0, 1)");
  }
  if (device_lane_width == 0) throw ConfigError("device lane width must be at least 1");
  switch (mode) {
    case Mode::host_only:
      if (host_workers == 0) throw ConfigError("host-only mode needs at least one host worker");
      break;
    case Mode::device_only:
      if (device_lanes == 0) throw ConfigError("device-only mode needs at least one device lane");
      break;
    case Mode::collaborative:
      if (host_workers == 0 && device_lanes == 0) throw ConfigError("no host workers and no device lanes");
      if (device_lanes == 0 && cutoff_fraction > 0.0) {
        throw ConfigError("a cut-off with no device lanes leaves the heaviest tasks unclaimed");
      }
      break;
  }
}

// ---- DeviceArena ------------------------------------------------------------

DeviceArena::DeviceArena(std::size_t budget_bytes, double threshold_fraction)
    : budget_(budget_bytes), threshold_fraction_(threshold_fraction) {}

std::size_t DeviceArena::missing_bytes(const BlockList& list) const {
  std::size_t missing = 0;
  std::vector<BlockId> counted;
  for (const Block* b : list.blocks()) {
    if (resident_.contains(b->id())) continue;
    if (std::find(counted.begin(), counted.end(), b->id()) != counted.end()) continue;
    counted.push_back(b->id());
    missing += b->footprint_bytes();
  }
  return missing;
}

bool DeviceArena::needs_clear(std::size_t missing) const {
  if (missing == 0) return false;
  const std::size_t free = budget_ - resident_bytes_;
  return missing > free || static_cast<double>(free) < threshold_fraction_ * static_cast<double>(budget_);
}

DeviceArena::Admission DeviceArena::copy_in(const BlockList& list) {
  Admission admission;
  admission.blocks.reserve(list.size());
  for (const Block* b : list.blocks()) {
    auto it = resident_.find(b->id());
    if (it == resident_.end()) {
      it = resident_.emplace(b->id(), std::make_unique<const Block>(*b)).first;
      resident_bytes_ += b->footprint_bytes();
      admission.bytes_copied += b->footprint_bytes();
    }
    admission.blocks.push_back(it->second.get());
  }
  bytes_copied_ += admission.bytes_copied;
  high_water_ = std::max(high_water_, resident_bytes_);
  ++in_flight_;
  return admission;
}

void DeviceArena::clear() {
  resident_.clear();
  resident_bytes_ = 0;
  ++evictions_;
}

DeviceArena::Admission DeviceArena::admit(const BlockList& list) {
  const std::size_t need = list.footprint_bytes();
  if (need > budget_) {
    throw ArenaError("block-list " + std::to_string(list.id()) + " needs " + std::to_string(need) +
                     " bytes but the device arena holds " + std::to_string(budget_));
  }
  std::unique_lock lock(mutex_);
  changed_.wait(lock, [&] { return !draining_; });
  bool evicted = false;
  if (needs_clear(missing_bytes(list))) {
    draining_ = true;
    changed_.wait(lock, [&] { return in_flight_ == 0; });
    clear();
    evicted = true;
    draining_ = false;
    changed_.notify_all();
  }
  auto admission = copy_in(list);
  admission.evicted = evicted;
  return admission;
}

std::optional<DeviceArena::Admission> DeviceArena::try_admit(const BlockList& list) {
  std::lock_guard lock(mutex_);
  if (draining_ || list.footprint_bytes() > budget_ || needs_clear(missing_bytes(list))) return std::nullopt;
  return copy_in(list);
}

void DeviceArena::release() {
  {
    std::lock_guard lock(mutex_);
    --in_flight_;
  }
  changed_.notify_all();
}

std::size_t DeviceArena::resident_bytes() const {
  std::lock_guard lock(mutex_);
  return resident_bytes_;
}
std::size_t DeviceArena::high_water() const {
  std::lock_guard lock(mutex_);
  return high_water_;
}
std::size_t DeviceArena::bytes_copied() const {
  std::lock_guard lock(mutex_);
  return bytes_copied_;
}
std::size_t DeviceArena::evictions() const {
  std::lock_guard lock(mutex_);
  return evictions_;
}
std::size_t DeviceArena::in_flight() const {
  std::lock_guard lock(mutex_);
  return in_flight_;
}

// ---- Composition and ordering -----------------------------------------------

std::vector<BlockList> compose_block_lists(const AlgorithmSpec& spec, const BlockGrid& grid,
                                           const AttributeStore& attributes, std::size_t iteration) {
  const ComposeContext context{grid, attributes, iteration};
  std::vector<BlockList> lists;
  if (spec.custom_composer) {
    lists = spec.custom_composer(context);
  } else if (spec.generic_predicate) {
    const std::size_t k = spec.list_size;
    const std::size_t blocks = grid.size();
    const double candidates = std::pow(static_cast<double>(blocks), static_cast<double>(k));
    if (static_cast<double>(k) * candidates > kCompositionGuard) {
      throw ConfigError("generic composition would test " + std::to_string(candidates) + " block-lists of size " +
                        std::to_string(k) + "; provide a custom composer instead");
    }
    if (blocks > 0) {
      std::vector<std::size_t> tuple(k, 0);
      std::vector<const Block*> members(k);
      for (;;) {
        for (std::size_t i = 0; i < k; ++i) members[i] = &grid.block(static_cast<BlockId>(tuple[i]));
        BlockList candidate(members);
        if (spec.generic_predicate(candidate, context)) lists.push_back(std::move(candidate));
        // Lexicographic successor, last position fastest.
        std::size_t pos = k;
        while (pos > 0 && ++tuple[pos - 1] == blocks) tuple[--pos] = 0;
        if (pos == 0) break;
      }
    }
  } else {
    throw ConfigError("no block-list composer");
  }
  for (std::size_t i = 0; i < lists.size(); ++i) lists[i].set_id(i);
  return lists;
}

std::vector<BlockList> compose_block_lists(const AlgorithmSpec& spec, const BlockGrid& grid) {
  return compose_block_lists(spec, grid, AttributeStore(grid.num_vertices(), grid.num_edges()), 0);
}

std::vector<Task> estimate_and_sort(std::vector<BlockList> lists, const AlgorithmSpec& spec) {
  std::vector<Task> tasks;
  tasks.reserve(lists.size());
  for (auto& list : lists) {
    const double weight = spec.estimator ? spec.estimator(list) : static_cast<double>(list.edge_count());
    if (!(weight >= 0.0)) {
      throw ContractError("estimator returned " + std::to_string(weight) + " for block-list " +
                          std::to_string(list.id()));
    }
    list.set_weight(weight);
    tasks.push_back({std::move(list), weight, Target::either});
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.list.id() < b.list.id();
  });
  return tasks;
}

std::size_t sync_globals(const AttributeStore& attributes, bool device_ran) {
  if (!device_ran) return 0;
  std::atomic_thread_fence(std::memory_order_seq_cst);
  return attributes.array_bytes();
}

// ---- Execution --------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

// Two claim cursors over the sorted tasks packed in one word: device lanes
// take from the front, host workers from the back.
class ClaimQueue {
 public:
  void reset(std::size_t count, std::size_t reserved) {
    state_.store(pack(0, count));
    reserved_ = reserved;
  }

  std::optional<std::size_t> claim_front() {
    std::uint64_t s = state_.load();
    for (;;) {
      const auto [front, back] = unpack(s);
      if (front >= back) return std::nullopt;
      if (state_.compare_exchange_weak(s, pack(front + 1, back))) return front;
    }
  }

  std::optional<std::size_t> claim_back() {
    std::uint64_t s = state_.load();
    for (;;) {
      const auto [front, back] = unpack(s);
      if (back <= std::max(front, reserved_)) return std::nullopt;
      if (state_.compare_exchange_weak(s, pack(front, back - 1))) return back - 1;
    }
  }

  void close() { state_.store(pack(0, 0)); }

 private:
  static std::uint64_t pack(std::size_t front, std::size_t back) {
    return (static_cast<std::uint64_t>(front) << 32) | static_cast<std::uint64_t>(back);
  }
  static std::pair<std::size_t, std::size_t> unpack(std::uint64_t s) {
    return {static_cast<std::size_t>(s >> 32), static_cast<std::size_t>(s & 0xffffffffu)};
  }

  std::atomic<std::uint64_t> state_{0};
  std::size_t reserved_ = 0;
};

class Executor {
 public:
  Executor(const AlgorithmSpec& spec, const RunConfig& config, AttributeStore& attributes, RunStats& stats)
      : spec_(spec),
        config_(config),
        attributes_(attributes),
        stats_(stats),
        arena_(config.arena_budget_bytes, config.arena_threshold_fraction),
        start_(static_cast<std::ptrdiff_t>(config.host_workers + config.device_lanes + 1)),
        finish_(static_cast<std::ptrdiff_t>(config.host_workers + config.device_lanes + 1)) {
    for (unsigned w = 0; w < config_.host_workers; ++w) threads_.emplace_back([this, w] { loop(Target::host, w); });
    for (unsigned l = 0; l < config_.device_lanes; ++l) threads_.emplace_back([this, l] { loop(Target::device, l); });
  }

  ~Executor() {
    stopping_ = true;
    start_.arrive_and_wait();
    for (auto& t : threads_) t.join();
  }

  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  // Runs every task exactly once under the given mode. Returns whether any
  // task ran on a device lane.
  bool dispatch(const std::vector<Task>& tasks, Mode mode, std::size_t iteration) {
    tasks_ = &tasks;
    mode_ = mode;
    iteration_ = iteration;
    executed_.store(0);
    device_ran_.store(false);
    failure_ = nullptr;
    failed_list_ = 0;
    aborted_.store(false);

    std::size_t reserved = 0;
    if (mode == Mode::collaborative && config_.device_lanes > 0 && device_kernel_or_fallback()) {
      reserved = static_cast<std::size_t>(std::ceil(config_.cutoff_fraction * static_cast<double>(tasks.size())));
      // The heaviest task always goes to a device lane.
      reserved = std::max<std::size_t>(reserved, 1);
    }
    queue_.reset(tasks.size(), reserved);

    start_.arrive_and_wait();
    finish_.arrive_and_wait();

    if (failure_) {
      try {
        std::rethrow_exception(failure_);
      } catch (const ArenaError&) {
        throw;
      } catch (const std::exception& e) {
        throw KernelError("kernel failed on block-list " + std::to_string(failed_list_) + " in iteration " +
                              std::to_string(iteration) + ": " + e.what(),
                          failed_list_, iteration);
      }
    }
    const std::size_t executed = executed_.load();
    if (executed != tasks.size()) {
      throw std::logic_error("executed " + std::to_string(executed) + " of " + std::to_string(tasks.size()) +
                             " tasks");
    }
    stats_.executed_per_iteration.push_back(executed);
    return device_ran_.load();
  }

  DeviceArena& arena() noexcept { return arena_; }

 private:
  bool device_kernel_or_fallback() const { return spec_.device_kernel || spec_.host_kernel; }

  bool participates(Target role) const {
    switch (mode_) {
      case Mode::host_only:
        return role == Target::host;
      case Mode::device_only:
        return role == Target::device;
      case Mode::collaborative:
        return role == Target::device || static_cast<bool>(spec_.host_kernel);
    }
    return false;
  }

  void loop(Target role, unsigned index) {
    for (;;) {
      start_.arrive_and_wait();
      if (stopping_) return;
      if (participates(role)) {
        if (role == Target::host) {
          host_work(index);
        } else {
          device_work(index);
        }
      }
      finish_.arrive_and_wait();
    }
  }

  void host_work(unsigned index) {
    while (!aborted()) {
      auto claimed = queue_.claim_back();
      if (!claimed) return;
      const Task& task = (*tasks_)[*claimed];
      record_claim(task, *claimed, Target::host, index);
      execute(task, task.list, Target::host);
    }
  }

  void device_work(unsigned lane) {
    auto current = queue_.claim_front();
    if (!current) return;
    std::optional<DeviceArena::Admission> admission;
    if (!admit_blocking(*current, lane, admission)) return;
    while (current) {
      const Task& task = (*tasks_)[*current];
      record_claim(task, *current, Target::device, lane);
      event(task, lane, TimelineEvent::Kind::begin);

      // Claim and stage the next task while this one computes.
      std::optional<std::size_t> next = aborted() ? std::nullopt : queue_.claim_front();
      std::optional<DeviceArena::Admission> next_admission;
      if (next) {
        next_admission = arena_.try_admit((*tasks_)[*next].list);
        if (next_admission) {
          note_copy(*next_admission);
          event((*tasks_)[*next], lane, TimelineEvent::Kind::prefetch);
        }
      }

      BlockList resident(admission->blocks, task.list.id());
      resident.set_weight(task.weight);
      execute(task, resident, Target::device);
      arena_.release();
      event(task, lane, TimelineEvent::Kind::end);

      if (aborted()) {
        // Drop the staged admission as well.
        if (next_admission) arena_.release();
        return;
      }
      current = next;
      admission = std::move(next_admission);
      if (current && !admission && !admit_blocking(*current, lane, admission)) return;
    }
  }

  bool admit_blocking(std::size_t index, unsigned lane, std::optional<DeviceArena::Admission>& admission) {
    const Task& task = (*tasks_)[index];
    try {
      admission = arena_.admit(task.list);
    } catch (...) {
      fail(task, std::current_exception());
      return false;
    }
    note_copy(*admission);
    event(task, lane, TimelineEvent::Kind::admit);
    return true;
  }

  void execute(const Task& task, const BlockList& list, Target target) {
    const Kernel* kernel = nullptr;
    Target flavor = target;
    if (target == Target::device) {
      kernel = spec_.device_kernel ? &spec_.device_kernel : &spec_.host_kernel;
      if (!spec_.device_kernel) flavor = Target::host;
    } else {
      kernel = &spec_.host_kernel;
    }
    const unsigned width = flavor == Target::device ? config_.device_lane_width : 1;
    TaskContext context(list, attributes_, flavor, width, iteration_, task.list.id(), tasks_->size());
    try {
      (*kernel)(context);
    } catch (...) {
      fail(task, std::current_exception());
    }
    executed_.fetch_add(1);
    if (target == Target::device) device_ran_.store(true);
  }

  void fail(const Task& task, std::exception_ptr error) {
    std::lock_guard lock(record_mutex_);
    if (!failure_) {
      failure_ = error;
      failed_list_ = task.list.id();
    }
    aborted_.store(true);
  }

  bool aborted() const { return aborted_.load(std::memory_order_relaxed); }

  void record_claim(const Task& task, std::size_t sorted_index, Target target, unsigned index) {
    std::lock_guard lock(record_mutex_);
    stats_.tasks.push_back({iteration_, task.list.id(), sorted_index, task.weight, target, index});
    if (target == Target::host) {
      ++stats_.host_tasks;
    } else {
      ++stats_.device_tasks;
    }
  }

  void note_copy(const DeviceArena::Admission& admission) {
    std::lock_guard lock(record_mutex_);
    stats_.bytes_copied += admission.bytes_copied;
  }

  void event(const Task& task, unsigned lane, TimelineEvent::Kind kind) {
    if (!config_.record_timeline) return;
    std::lock_guard lock(record_mutex_);
    stats_.timeline.push_back({sequence_++, iteration_, task.list.id(), lane, kind});
  }

  const AlgorithmSpec& spec_;
  const RunConfig& config_;
  AttributeStore& attributes_;
  RunStats& stats_;
  DeviceArena arena_;
  ClaimQueue queue_;
  std::barrier<> start_;
  std::barrier<> finish_;
  std::vector<std::thread> threads_;
  std::atomic<bool> stopping_{false};

  const std::vector<Task>* tasks_ = nullptr;
  Mode mode_ = Mode::collaborative;
  std::size_t iteration_ = 0;
  std::atomic<std::size_t> executed_{0};
  std::atomic<bool> device_ran_{false};
  std::atomic<bool> aborted_{false};
  std::mutex record_mutex_;
  std::exception_ptr failure_;
  std::size_t failed_list_ = 0;
  std::uint64_t sequence_ = 0;
};

void check_mode(const AlgorithmSpec& spec, const RunConfig& config, Mode mode) {
  RunConfig effective = config;
  effective.mode = mode;
  effective.validate();
  if (mode == Mode::host_only && !spec.host_kernel) {
    throw ConfigError("host-only mode needs a host kernel for '" + spec.name + "'");
  }
  if (mode == Mode::device_only && !spec.device_kernel) {
    throw ConfigError("device-only mode needs a device kernel for '" + spec.name + "'");
  }
}

}  // namespace

RunResult run(const AlgorithmSpec& spec, const BlockGrid& grid, const RunConfig& config, AttributeStore attributes) {
  spec.validate();
  check_mode(spec, config, config.mode);

  RunResult result{std::move(attributes), {}};
  RunStats& stats = result.stats;
  const auto started = Clock::now();
  {
    Executor executor(spec, config, result.attributes, stats);
    for (std::size_t iteration = 0;; ++iteration) {
      const auto iteration_start = Clock::now();
      IterationContext context(iteration, config.mode, result.attributes, grid, stats);
      if (spec.before_iteration) spec.before_iteration(context);
      const Mode mode = context.mode();
      if (mode != config.mode) check_mode(spec, config, mode);

      auto tasks = estimate_and_sort(compose_block_lists(spec, grid, result.attributes, iteration), spec);
      stats.composed_per_iteration.push_back(tasks.size());
      stats.mode_per_iteration.push_back(mode);
      const bool device_ran = executor.dispatch(tasks, mode, iteration);
      stats.bytes_synced += sync_globals(result.attributes, device_ran);

      ++stats.iterations;
      const bool again = spec.after_iteration(context);
      stats.iteration_seconds.push_back(std::chrono::duration<double>(Clock::now() - iteration_start).count());
      if (!again) break;
    }
    stats.evictions = executor.arena().evictions();
    stats.arena_high_water = executor.arena().high_water();
  }
  stats.kernel_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return result;
}

}  // namespace blockgraph
