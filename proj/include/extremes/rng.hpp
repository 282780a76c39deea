#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace extremes {

/// Deterministic random source. All samplers in this project draw through
/// this wrapper so that a (seed, stream) pair pins down every experiment
/// bit-for-bit, independently of the thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard Pareto with tail index alpha: P(X > x) = x^{-alpha}, x >= 1.
  double pareto(double alpha) { return std::pow(uniform01(), -1.0 / alpha); }

  /// +1 with probability p, otherwise -1.
  double sign(double p) { return uniform01() < p ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller (one cached value).
  double normal() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    cache_ = r * std::sin(a);
    have_cache_ = true;
    return r * std::cos(a);
  }

  /// Poisson(lambda) by inversion for small means, normal approximation
  /// above 64 (used only for point-process counts where lambda is modest).
  long poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 64.0) {
      const double l = std::exp(-lambda);
      long k = 0;
      double prod = uniform01();
      while (prod > l) {
        ++k;
        prod *= uniform01();
      }
      return k;
    }
    // Split recursively; keeps inversion exactness for each part.
    long half = poisson(lambda / 2.0);
    return half + poisson(lambda - lambda / 2.0);
  }

  std::size_t uniform_index(std::size_t n) {
    // Modulo bias is negligible for the index ranges used here (n << 2^64).
    return static_cast<std::size_t>(eng_() % n);
  }

  /// Derive an independent stream seed from a base seed. splitmix64 mix.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
  double cache_ = 0.0;
  bool have_cache_ = false;
};

/// Run fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots by the callee; the schedule never influences
/// the output. The first exception raised by any worker is rethrown on the
/// calling thread after the pool drains.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);  // stop handing out work
        return;
      }
    }
  };
  const int n = std::min<int>(threads, static_cast<int>(count));
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace extremes
