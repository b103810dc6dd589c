#pragma once

#include <cstddef>
#include <functional>

namespace tropfact {

/// Worker count: TROPFACT_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Iterations must be independent; results
/// are deterministic as long as body writes only to slot i. The first
/// exception thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tropfact
