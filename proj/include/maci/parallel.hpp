// Deterministic work sharing for grid sweeps and Monte Carlo chunks.
#pragma once

#include <cstddef>
#include <functional>

namespace maci {

// Hardware concurrency, capped by the MA_CI_THREADS environment variable
// when set; at least 1.
int worker_count();

// Runs fn(i) for i in [0, n).  fn must be safe to call concurrently; each
// index runs exactly once.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace maci
