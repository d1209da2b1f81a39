#pragma once

#include <cstddef>
#include <functional>

namespace hnm {

/// Worker count for internal loops: HM_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency(), never less than 1.
std::size_t thread_budget();

/// Splits [0, count) into contiguous chunks and runs body(worker, begin, end) on up to
/// thread_budget() threads. worker is in [0, workers) where workers is returned.
std::size_t parallel_chunks(std::size_t count,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

} // namespace hnm
