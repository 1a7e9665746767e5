#pragma once

#include <cstddef>
#include <functional>

namespace permuton {

/// Worker count: an explicit override if set, else PERMUTON_THREADS, else the
/// hardware concurrency (at least 1).
std::size_t thread_count();
void set_thread_count(std::size_t n);  // 0 clears the override

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// callers write results into index-addressed slots so output never depends
/// on the pool size. Nested calls run serially on the calling worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace permuton
