#pragma once

#include <cstddef>
#include <functional>

namespace rotpatch {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// hardware default. Reads the ROTPATCH_THREADS environment variable on first
/// use if never set explicitly.
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, n). Work items must be independent; results are
/// deterministic regardless of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rotpatch
