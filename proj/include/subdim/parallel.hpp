// Minimal deterministic work-sharing loop. Each index is processed exactly
// once and writes only its own slot, so results never depend on the worker
// count; threads == 1 degenerates to a plain loop.
#pragma once

#include <functional>

namespace subdim {

// requested == 0 means "auto" (hardware concurrency, at least 1).
int resolve_threads(int requested);

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace subdim
