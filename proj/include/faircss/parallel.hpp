#pragma once

#include <cstddef>
#include <functional>

namespace faircss {

/// Worker count: FAIRCSS_WORKERS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Items
/// are handed out in increasing order; the first exception thrown is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace faircss
