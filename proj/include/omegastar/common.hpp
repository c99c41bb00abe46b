#pragma once
// Shared plumbing: error types, memory budgeting, thread sizing, a
// deterministic parallel-for and compensated summation.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace omegastar {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// An operation would exceed the configured memory budget.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies beyond an operation's configured work cap.
class cap_exceeded_error : public resource_limit_error {
 public:
  using resource_limit_error::resource_limit_error;
};

namespace detail {

inline std::atomic<u64>& memory_cap_slot() {
  static std::atomic<u64> cap{u64{2} << 30};  // 2 GiB
  return cap;
}

inline std::atomic<unsigned>& thread_count_slot() {
  static std::atomic<unsigned> n{0};  // 0 = resolve lazily
  return n;
}

}  // namespace detail

inline u64 memory_cap() { return detail::memory_cap_slot().load(); }
inline void set_memory_cap(u64 bytes) { detail::memory_cap_slot().store(bytes); }

// Throws resource_limit_error if a planned allocation would exceed the cap.
inline void require_memory(u64 bytes, const char* what) {
  if (bytes > memory_cap()) {
    throw resource_limit_error(std::string(what) + ": needs about " +
                               std::to_string(bytes) + " bytes, memory cap is " +
                               std::to_string(memory_cap()));
  }
}

inline void set_thread_count(unsigned n) { detail::thread_count_slot().store(n); }

// Resolution order: explicit argument, set_thread_count(), OMEGASTAR_THREADS,
// hardware concurrency.
inline unsigned thread_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (unsigned cfg = detail::thread_count_slot().load(); cfg > 0) return cfg;
  if (const char* env = std::getenv("OMEGASTAR_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Neumaier-compensated accumulator. Every float reduction that feeds a
// reported or asserted number goes through one of these, in a fixed order,
// so results do not depend on scheduling.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Runs fn(i) once for every i in [0, n). Work is dealt through an atomic
// counter; callers must write results into per-index slots so the outcome is
// independent of scheduling.
template <class Fn>
void parallel_for(u64 n, unsigned threads, Fn&& fn) {
  threads = thread_count(threads);
  if (threads > n) threads = static_cast<unsigned>(n);
  if (threads <= 1) {
    for (u64 i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<u64> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      u64 i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n, std::memory_order_relaxed);  // drain remaining work
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  if (r > 0xFFFFFFFFull) r = 0xFFFFFFFFull;  // isqrt(2^64-1) = 2^32-1
  while (r * r > n) --r;
  while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

}  // namespace omegastar
