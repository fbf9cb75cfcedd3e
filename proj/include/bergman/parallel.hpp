#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bergman {

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// computed independently, so results do not depend on the worker count.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, const Body& body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
}

}  // namespace bergman
