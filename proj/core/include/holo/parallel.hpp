#pragma once

#include <cstddef>
#include <functional>

namespace holo {

// Worker count used by grid sampling and sweeps. Defaults to the
// HOLOBOUND_THREADS environment variable, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// write into per-index slots and reduce in index order afterwards, which
// keeps results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace holo
