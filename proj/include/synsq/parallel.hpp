#ifndef SYNSQ_PARALLEL_HPP
#define SYNSQ_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace synsq {

// Worker count: min(SYNSQ_THREADS, hardware_concurrency), at least 1.
int max_threads();

// Runs fn(0..n-1) on up to max_threads() workers. Tasks must be independent;
// results should be written to preallocated per-index slots so the outcome is
// identical regardless of scheduling. Nested calls run serially to avoid
// oversubscription. Exceptions from tasks are rethrown on the caller.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace synsq

#endif  // SYNSQ_PARALLEL_HPP
