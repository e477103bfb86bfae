#pragma once

#include <cstddef>
#include <functional>

namespace ccrweyl {

/// Worker count: hardware concurrency, capped by the CCRWEYL_THREADS
/// environment variable when it is set to a positive integer.
std::size_t worker_count();

/// Runs body(i) for i in [begin, end). Indices are split into contiguous
/// chunks, one per worker; body must only write to state owned by index i.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace ccrweyl
