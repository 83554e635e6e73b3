#pragma once

#include <cstddef>
#include <functional>

namespace commutclass {

/// Caps the number of worker threads used by parallel sweeps. 0 restores
/// the hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(0) .. fn(count-1), possibly across threads. Each index is
/// evaluated exactly once; results must be written to per-index slots so
/// the outcome is independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace commutclass
