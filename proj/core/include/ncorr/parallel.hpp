#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace ncorr {

// Runs body(i) for i in [0, count) on up to `workers` threads. Work is split
// into contiguous static chunks, so the assignment of indices to threads does
// not depend on timing. Callers write results into per-index slots.
// Worker count used when a caller passes 0; defaults to hardware concurrency.
unsigned default_workers() noexcept;
void set_default_workers(unsigned workers) noexcept;

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

// Pairwise (tree) summation. Result depends only on the input order.
double tree_sum(std::span<const double> xs);
std::complex<double> tree_sum(std::span<const std::complex<double>> xs);

}  // namespace ncorr
