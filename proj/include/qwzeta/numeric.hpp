#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qwzeta {

using Complex = std::complex<double>;

// Integer power by repeated squaring. Used instead of std::pow wherever the
// exponent is structurally an integer (Betti numbers, orbit counts) so that
// an exact zero base with positive exponent yields an exact zero.
template <typename T>
T ipow(T base, long long exponent) {
  if (exponent < 0) return T(1) / ipow(base, -exponent);
  T result(1);
  T acc = base;
  while (exponent > 0) {
    if (exponent & 1) result *= acc;
    acc *= acc;
    exponent >>= 1;
  }
  return result;
}

// Pairwise (cascade) summation over [first, last). Reduction order depends
// only on the element count, so results are identical regardless of how the
// inputs were produced (serial or parallel fill).
template <typename T>
T pairwise_sum(const T* data, std::size_t count) {
  if (count == 0) return T(0);
  if (count <= 16) {
    T acc = data[0];
    for (std::size_t i = 1; i < count; ++i) acc += data[i];
    return acc;
  }
  std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(values.data(), values.size());
}

// Thread cap: QWZETA_THREADS if set, hardware concurrency otherwise.
inline int thread_budget() {
  if (const char* env = std::getenv("QWZETA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min(v, 1024L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Parallel map over [0, count). Each index writes only its own output slot,
// so the result is independent of the thread count. Exceptions from workers
// are re-thrown on the calling thread (first one wins).
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body) {
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      try {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline bool approx_equal(Complex x, Complex y, double tol) {
  return std::abs(x - y) <= tol;
}

}  // namespace qwzeta
