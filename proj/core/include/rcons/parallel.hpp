#pragma once

#include <cstddef>
#include <functional>

namespace rcons {

/// Worker cap: ROBUST_CONSENSUS_THREADS when set, hardware concurrency
/// otherwise, never below one.
int max_threads();

/// Runs fn(i) for i in [0, n). Work is split into fixed chunks whose results
/// must not depend on which thread executes them; callers keep determinism by
/// writing to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Chunked variant: fn(chunk_index, begin, end) over a fixed chunk count that
/// does not depend on the worker count, so reductions stay bitwise stable.
void parallel_chunks(std::size_t n, std::size_t n_chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace rcons
