#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace aclandau {

/// Parses a thread-count setting. Empty means "use all cores".
inline int parse_thread_count(const char* text) {
    if (text == nullptr || *text == '\0') {
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    char* end = nullptr;
    const long v = std::strtol(text, &end, 10);
    if (end == text || *end != '\0' || v < 1 || v > 4096) {
        throw ValidationError(std::string("ACLANDAU_THREADS must be an integer >= 1, got '") + text + "'");
    }
    return static_cast<int>(v);
}

/// Worker threads used for row-parallel sparse products (ACLANDAU_THREADS).
inline int thread_count() {
    static const int count = parse_thread_count(std::getenv("ACLANDAU_THREADS"));
    return count;
}

/// Calls body(begin, end) on disjoint chunks of [0, n).
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 8192) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()),
                                                      std::max<std::size_t>(1, n / min_chunk));
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = w * chunk, e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(std::size_t{0}, std::min(n, chunk));
}

}  // namespace aclandau
