#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace etdclust {

/// Runs fn(begin, end) over [0, count) split into contiguous blocks, one per
/// worker. Workers write to disjoint output slots chosen by index, so results
/// do not depend on the worker count. The first exception thrown by any block
/// is rethrown on the calling thread.
template <typename Fn>
void parallel_blocks(std::size_t count, int workers, Fn&& fn) {
    if (count == 0) return;
    if (workers < 1) workers = 1;
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    if (nw == 1) {
        fn(std::size_t{0}, count);
        return;
    }

    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(nw);
    const std::size_t chunk = count / nw;
    const std::size_t extra = count % nw;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t len = chunk + (w < extra ? 1 : 0);
        const std::size_t end = begin + len;
        threads.emplace_back([&fn, &errors, w, begin, end]() {
            try {
                fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace etdclust
