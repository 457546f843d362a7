#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace memsense {

/// Splits [0, count) into contiguous chunks and calls fn(begin, end) for each,
/// one chunk per thread. threads <= 1 runs inline.
template <class Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn)
{
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), count);
    if (workers <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t step = (count + workers - 1) / workers;
    for (std::size_t begin = 0; begin < count; begin += step)
        pool.emplace_back([&fn, begin, end = std::min(count, begin + step)] { fn(begin, end); });
}

} // namespace memsense
