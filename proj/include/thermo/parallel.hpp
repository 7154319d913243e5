// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace thermo {

// Worker cap: THERMO_THREADS when set to a positive integer, else hardware concurrency.
unsigned worker_count();

// Calls body(i) for i in [0, count), on up to worker_count() threads. Each index is
// handled exactly once; the first exception is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace thermo
