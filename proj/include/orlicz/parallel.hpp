#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

/// Number of items shard `w` of `workers` handles out of `total`.
inline std::size_t shard_size(std::size_t total, std::size_t workers, std::size_t w) {
    return total / workers + (w < total % workers ? 1 : 0);
}

/// Runs fn(w) for w in [0, workers), one thread per shard, rethrowing the
/// first failure in shard order.
template <class Fn>
void run_sharded(std::size_t workers, Fn&& fn) {
    if (workers == 0) throw DomainError("worker count must be positive");
    if (workers == 1) {
        fn(std::size_t{0});
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                fn(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace orlicz
