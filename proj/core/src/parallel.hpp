#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ddl::detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Calls fn(begin, end, worker) on contiguous chunks of [0, count). Callers
// must make the combined result independent of the chunking.
template <class Fn>
void parallel_chunks(std::size_t count, unsigned workers, Fn&& fn) {
    const std::size_t n_workers =
        std::max<std::size_t>(1, std::min<std::size_t>(resolve_workers(workers), count));
    if (n_workers == 1) {
        fn(std::size_t{0}, count, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(n_workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        const std::size_t step = (count + n_workers - 1) / n_workers;
        for (std::size_t w = 0; w < n_workers; ++w) {
            const std::size_t begin = w * step;
            const std::size_t end = std::min(count, begin + step);
            if (begin >= end) break;
            pool.emplace_back([&fn, &errors, begin, end, w] {
                try {
                    fn(begin, end, static_cast<unsigned>(w));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ddl::detail
