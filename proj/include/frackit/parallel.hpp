#pragma once

#include <cstddef>
#include <functional>

namespace frackit {

/// Worker count from FRACKIT_THREADS (unset or 0 = hardware concurrency).
unsigned worker_count();

/// Calls body(i) for i in [0, n), striding indices across workers. Bodies must
/// write disjoint outputs; results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace frackit
