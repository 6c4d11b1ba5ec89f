#pragma once

#include <cstddef>
#include <functional>

namespace posmom {

/// Number of worker threads: POSMOM_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency().
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Each index is
/// processed exactly once; if any call throws, the exception from the
/// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace posmom
