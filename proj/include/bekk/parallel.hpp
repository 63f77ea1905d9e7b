#pragma once

#include <cstddef>
#include <functional>

namespace bekk {

/// Worker count: BEKK_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] unsigned thread_count();

/// Calls body(i) for i in [0, n) across thread_count() workers. Bodies must
/// write only to slot i of caller-owned storage; exceptions are rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bekk
