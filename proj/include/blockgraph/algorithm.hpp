#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "blockgraph/attributes.hpp"
#include "blockgraph/block.hpp"
#include "blockgraph/dispatch.hpp"

namespace blockgraph {

class BlockGrid;
struct RunStats;

enum class Mode { host_only, device_only, collaborative };
enum class Target { host, device, either };

// What a kernel sees while executing one task.
class TaskContext {
 public:
  TaskContext(const BlockList& list, AttributeStore& attributes, Target target, unsigned width,
              std::size_t iteration, std::size_t task_index, std::size_t task_count)
      : list_(list),
        attributes_(attributes),
        target_(target),
        width_(width),
        iteration_(iteration),
        task_index_(task_index),
        task_count_(task_count) {}

  const BlockList& list() const noexcept { return list_; }
  const Block& block(std::size_t i) const noexcept { return list_[i]; }
  AttributeStore& attributes() const noexcept { return attributes_; }
  Target target() const noexcept { return target_; }
  bool on_device() const noexcept { return target_ == Target::device; }
  unsigned width() const noexcept { return width_; }
  std::size_t iteration() const noexcept { return iteration_; }

  // Position of this task's list among the lists composed for the iteration.
  std::size_t task_index() const noexcept { return task_index_; }
  std::size_t task_count() const noexcept { return task_count_; }

  // This task's share of an array of length n.
  IndexRange interval(std::size_t n) const noexcept { return get_interval(task_index_, task_count_, n); }

  // Dispatches with the flavor of the executor running the task.
  template <class Body>
  void parallel_for(std::size_t count, Body&& body) const {
    if (on_device()) {
      for_device(width_, count, std::forward<Body>(body));
    } else {
      for_host(count, std::forward<Body>(body));
    }
  }

  template <class T, class Body>
  T parallel_reduce(std::size_t count, Body&& body, T init = T{}) const {
    if (on_device()) return reduce_device<T>(width_, count, std::forward<Body>(body), init);
    return reduce_host<T>(count, std::forward<Body>(body), init);
  }

 private:
  const BlockList& list_;
  AttributeStore& attributes_;
  Target target_;
  unsigned width_;
  std::size_t iteration_;
  std::size_t task_index_;
  std::size_t task_count_;
};

// Driver-thread view handed to the iteration hooks.
class IterationContext {
 public:
  IterationContext(std::size_t iteration, Mode mode, AttributeStore& attributes, const BlockGrid& grid,
                   RunStats& stats)
      : iteration_(iteration), mode_(mode), attributes_(attributes), grid_(grid), stats_(stats) {}

  std::size_t iteration() const noexcept { return iteration_; }
  Mode mode() const noexcept { return mode_; }
  // Selects the execution mode of the coming dispatch (before_iteration only).
  void set_mode(Mode mode) noexcept { mode_ = mode; }
  AttributeStore& attributes() const noexcept { return attributes_; }
  const BlockGrid& grid() const noexcept { return grid_; }
  RunStats& stats() const noexcept { return stats_; }

 private:
  std::size_t iteration_;
  Mode mode_;
  AttributeStore& attributes_;
  const BlockGrid& grid_;
  RunStats& stats_;
};

struct ComposeContext {
  const BlockGrid& grid;
  const AttributeStore& attributes;
  std::size_t iteration;
};

using Kernel = std::function<void(TaskContext&)>;
using GenericPredicate = std::function<bool(const BlockList&, const ComposeContext&)>;
using CustomComposer = std::function<std::vector<BlockList>(const ComposeContext&)>;
using BeforeIteration = std::function<void(IterationContext&)>;
using AfterIteration = std::function<bool(IterationContext&)>;
using Estimator = std::function<double(const BlockList&)>;

// The user functors of one algorithm. At least one kernel, exactly one of
// generic_predicate / custom_composer, and after_iteration are required.
struct AlgorithmSpec {
  std::string name;
  Kernel host_kernel;
  Kernel device_kernel;
  GenericPredicate generic_predicate;
  CustomComposer custom_composer;
  BeforeIteration before_iteration;
  AfterIteration after_iteration;
  Estimator estimator;
  std::size_t list_size = 1;

  // Throws ConfigError naming the first violated requirement.
  void validate() const;
};

}  // namespace blockgraph
