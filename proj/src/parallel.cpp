#include "unfold/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace unfold::parallel {

std::size_t thread_count() {
  static const std::size_t count = [] {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("UNFOLD_THREADS")) {
      try {
        long cap = std::stol(env);
        if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
      } catch (...) {
      }
    }
    return n;
  }();
  return count;
}

void for_chunks(std::size_t begin, std::size_t end, std::size_t chunk,
                const std::function<void(std::size_t, std::size_t)>& fn) {
  if (end <= begin) return;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (end - begin + chunk - 1) / chunk;
  const std::size_t workers = std::min(thread_count(), chunks);
  auto run = [&](std::size_t c) { fn(begin + c * chunk, std::min(end, begin + (c + 1) * chunk)); };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) run(c);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

double sum_chunks(std::size_t begin, std::size_t end, std::size_t chunk,
                  const std::function<double(std::size_t, std::size_t)>& fn) {
  if (end <= begin) return 0.0;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (end - begin + chunk - 1) / chunk;
  std::vector<double> partial(chunks, 0.0);
  for_chunks(0, chunks, 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t c = lo; c < hi; ++c) partial[c] = fn(begin + c * chunk, std::min(end, begin + (c + 1) * chunk));
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace unfold::parallel
