#ifndef SPANFORGE_PARALLEL_HPP
#define SPANFORGE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace spanforge {

/// Number of workers used for fan-out loops; honours SPANFORGE_THREADS,
/// defaults to the hardware concurrency.
std::size_t worker_count();

/// Runs fn(begin, end) over disjoint chunks of [0, n) on worker threads.
/// Chunk boundaries depend only on n and the worker count, and callers merge
/// per-chunk results in chunk order, so results are schedule-independent.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace spanforge

#endif
