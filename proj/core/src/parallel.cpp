#include "ncorr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ncorr {

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned default_workers() noexcept {
  const unsigned w = g_workers.load();
  return w ? w : std::max(1u, std::thread::hardware_concurrency());
}

void set_default_workers(unsigned workers) noexcept { g_workers.store(workers); }

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  if (workers == 0) workers = default_workers();
  unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (w == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(w);
  const std::size_t chunk = (count + w - 1) / w;
  for (unsigned t = 0; t < w; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

template <class T>
static T tree_sum_impl(std::span<const T> xs) {
  if (xs.empty()) return T{};
  if (xs.size() <= 8) {
    T s{};
    for (const auto& x : xs) s += x;
    return s;
  }
  const std::size_t mid = xs.size() / 2;
  return tree_sum_impl(xs.first(mid)) + tree_sum_impl(xs.subspan(mid));
}

double tree_sum(std::span<const double> xs) { return tree_sum_impl(xs); }
std::complex<double> tree_sum(std::span<const std::complex<double>> xs) { return tree_sum_impl(xs); }

}  // namespace ncorr
