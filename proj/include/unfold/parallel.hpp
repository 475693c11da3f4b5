#pragma once

#include <cstddef>
#include <functional>

namespace unfold::parallel {

// Hardware concurrency capped by UNFOLD_THREADS.
std::size_t thread_count();

// Runs fn(lo, hi) over [begin, end) split into chunks of `chunk` elements.
// Chunk boundaries do not depend on the thread count.
void for_chunks(std::size_t begin, std::size_t end, std::size_t chunk,
                const std::function<void(std::size_t, std::size_t)>& fn);

// Sums fn(lo, hi) per chunk, then combines the partials in chunk order, so the
// result is the same for any thread count.
double sum_chunks(std::size_t begin, std::size_t end, std::size_t chunk,
                  const std::function<double(std::size_t, std::size_t)>& fn);

}  // namespace unfold::parallel
