#pragma once

#include <cstddef>
#include <functional>

namespace solenoid {

// Worker count from SOLENOID_WORKERS, else the hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks on up to `workers`
/// threads. Each index is visited exactly once; the exception from the lowest
/// failing chunk is rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace solenoid
