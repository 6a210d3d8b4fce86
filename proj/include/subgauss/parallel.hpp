#ifndef SUBGAUSS_PARALLEL_HPP
#define SUBGAUSS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace subgauss {

/// Number of worker threads: SUBGAUSS_THREADS if set and nonzero, otherwise
/// (or for the value 0) the hardware concurrency.
std::size_t thread_budget();

/// Runs fn over [0, n) split into contiguous chunks, one per worker. Results
/// must be reduced by the caller; chunk boundaries carry no semantics, so any
/// per-index state must be derived from the index alone.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace subgauss

#endif
