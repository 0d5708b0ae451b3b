#ifndef MOPEF_PARALLEL_HPP
#define MOPEF_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mopef {

/// Worker count: hardware concurrency, capped by the MOPEF_THREADS environment variable.
std::size_t worker_count();

/**
 * @brief Runs body(i) for i in [0, n) on up to worker_count() threads.
 *
 * Callers write results into per-index slots, so output never depends on
 * scheduling. The first exception thrown by any body is rethrown.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mopef

#endif  // MOPEF_PARALLEL_HPP
