#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <type_traits>
#include <utility>
#include <vector>

#include <omp.h>

namespace blockgraph {

// Kernel-visible atomic primitives. Cells are plain objects in attribute
// arrays; every access during a dispatch phase goes through std::atomic_ref.

template <class T>
void atomic_add(T& cell, T delta) noexcept {
  std::atomic_ref<T>(cell).fetch_add(delta, std::memory_order_relaxed);
}

// Swaps new_value into cell iff it holds expected. Returns whether it did.
template <class T>
bool cas(T& cell, T expected, T new_value) noexcept {
  return std::atomic_ref<T>(cell).compare_exchange_strong(expected, new_value,
                                                          std::memory_order_acq_rel);
}

template <class T>
T atomic_load(T& cell) noexcept {
  return std::atomic_ref<T>(cell).load(std::memory_order_relaxed);
}

template <class T>
void atomic_store(T& cell, T value) noexcept {
  std::atomic_ref<T>(cell).store(value, std::memory_order_relaxed);
}

template <class T>
void atomic_min(T& cell, T value) noexcept {
  std::atomic_ref<T> ref(cell);
  T current = ref.load(std::memory_order_relaxed);
  while (value < current && !ref.compare_exchange_weak(current, value)) {
  }
}

struct IndexRange {
  std::size_t lo;
  std::size_t hi;
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Slice i of t equal-as-possible slices of [0, n): [floor(i*n/t), floor((i+1)*n/t)).
constexpr IndexRange get_interval(std::size_t i, std::size_t t, std::size_t n) noexcept {
  using wide = unsigned __int128;
  return {static_cast<std::size_t>(wide{i} * n / t), static_cast<std::size_t>(wide{i + 1} * n / t)};
}

// Host flavor: runs the body sequentially inside the calling task.
template <class Body>
void for_host(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

template <class T, class Body, class Op = std::plus<T>>
T reduce_host(std::size_t count, Body&& body, T init = T{}, Op op = {}) {
  T acc = init;
  for (std::size_t i = 0; i < count; ++i) acc = op(acc, body(i));
  return acc;
}

namespace detail {

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown on the calling thread.
class FirstException {
 public:
  template <class F>
  void guard(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

inline constexpr std::int64_t kDeviceChunk = 64;

}  // namespace detail

// Device flavor: spreads the index space over `width` threads.
template <class Body>
void for_device(unsigned width, std::size_t count, Body&& body) {
  if (width <= 1 || count <= 1) {
    for_host(count, body);
    return;
  }
  detail::FirstException error;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(width) schedule(dynamic, detail::kDeviceChunk)
  for (std::int64_t i = 0; i < n; ++i) {
    error.guard([&] { body(static_cast<std::size_t>(i)); });
  }
  error.rethrow();
}

template <class T, class Body, class Op = std::plus<T>>
T reduce_device(unsigned width, std::size_t count, Body&& body, T init = T{}, Op op = {}) {
  if (width <= 1 || count <= 1) return reduce_host<T>(count, body, init, op);
  detail::FirstException error;
  std::vector<T> partial(width, T{});
  std::vector<char> touched(width, 0);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(width)
  {
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    T local{};
    bool any = false;
#pragma omp for schedule(dynamic, detail::kDeviceChunk)
    for (std::int64_t i = 0; i < n; ++i) {
      error.guard([&] {
        T value = body(static_cast<std::size_t>(i));
        local = any ? op(local, value) : value;
        any = true;
      });
    }
    partial[tid] = local;
    if (any) touched[tid] = 1;
  }
  error.rethrow();
  T acc = init;
  for (std::size_t t = 0; t < partial.size(); ++t) {
    if (touched[t]) acc = op(acc, partial[t]);
  }
  return acc;
}

}  // namespace blockgraph
