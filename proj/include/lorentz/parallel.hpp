#pragma once

// Loop kernels with a serial reference path and an OpenMP path.
//
// Every kernel returns identical results under both policies: reductions
// are resolved by index order, never by thread arrival order.

#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <utility>

#include <omp.h>

namespace lorentz {

enum class Execution { kSerial, kParallel };

namespace detail {

// Stores the exception thrown by the lowest loop index.
class ExceptionSlot {
 public:
  void capture(std::size_t index) {
    std::lock_guard lock(mu_);
    if (!error_ || index < index_) {
      error_ = std::current_exception();
      index_ = index;
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
  std::size_t index_ = std::numeric_limits<std::size_t>::max();
};

}  // namespace detail

/// Calls body(i) for i in [0, n).
template <class Body>
void for_each_index(std::size_t n, Body&& body, Execution exec) {
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  detail::ExceptionSlot slot;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      slot.capture(static_cast<std::size_t>(i));
    }
  }
  slot.rethrow();
}

/// Smallest i in [0, n) with pred(i) true.
template <class Pred>
std::optional<std::size_t> find_first(std::size_t n, Pred&& pred, Execution exec) {
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pred(i)) return i;
    }
    return std::nullopt;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{kNone};
  detail::ExceptionSlot slot;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const auto i = static_cast<std::size_t>(j);
    if (i > best.load(std::memory_order_relaxed)) continue;
    try {
      if (pred(i)) {
        std::size_t cur = best.load(std::memory_order_relaxed);
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (...) {
      slot.capture(i);
    }
  }
  slot.rethrow();
  const std::size_t found = best.load();
  if (found == kNone) return std::nullopt;
  return found;
}

/// Maximum of value(i) over [0, n) and the smallest index attaining it.
/// Returns {-inf, n} when n == 0.
template <class Value>
std::pair<double, std::size_t> max_with_index(std::size_t n, Value&& value, Execution exec) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = n;
  auto better = [](double v, std::size_t i, double b, std::size_t a) {
    return v > b || (v == b && i < a);
  };
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = value(i);
      if (better(v, i, best, arg)) {
        best = v;
        arg = i;
      }
    }
    return {best, arg};
  }
  detail::ExceptionSlot slot;
  std::mutex mu;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    double local = -std::numeric_limits<double>::infinity();
    std::size_t local_arg = n;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t j = 0; j < count; ++j) {
      const auto i = static_cast<std::size_t>(j);
      try {
        const double v = value(i);
        if (better(v, i, local, local_arg)) {
          local = v;
          local_arg = i;
        }
      } catch (...) {
        slot.capture(i);
      }
    }
    std::lock_guard lock(mu);
    if (better(local, local_arg, best, arg)) {
      best = local;
      arg = local_arg;
    }
  }
  slot.rethrow();
  return {best, arg};
}

}  // namespace lorentz
