#include "strichartz/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace strichartz {

namespace {

int env_workers() {
    const char* s = std::getenv("STRICHARTZ_THREADS");
    if (s == nullptr) return 1;
    try {
        int n = std::stoi(s);
        return n >= 1 ? n : 1;
    } catch (...) {
        return 1;
    }
}

std::atomic<int>& workers() {
    static std::atomic<int> n{env_workers()};
    return n;
}

}  // namespace

int worker_count() { return workers().load(); }

void set_worker_count(int n) { workers().store(std::max(1, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::mutex m;
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t lo = n * k / w;
        const std::size_t hi = n * (k + 1) / w;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace strichartz
