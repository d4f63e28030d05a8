#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace strichartz {

/// Worker count used by parallel loops. Initialised from STRICHARTZ_THREADS,
/// falling back to 1.
int worker_count();
void set_worker_count(int n);

/// Runs body(i) for i in [0, n). Iterations are split into contiguous blocks,
/// one per worker; body must only write to per-index storage.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (tree) summation; result is independent of the worker count.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace strichartz
