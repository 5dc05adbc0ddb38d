#include "compacton_lab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace clab {

int thread_budget() {
  int budget = 0;
  if (const char* env = std::getenv("COMPACTON_LAB_THREADS")) {
    budget = std::atoi(env);
  }
  if (budget <= 0) {
    budget = static_cast<int>(std::thread::hardware_concurrency());
    if (budget <= 0) budget = 1;
  }
  return budget;
}

void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn,
                        int max_threads) {
  if (count == 0) return;
  int workers = max_threads > 0 ? max_threads : thread_budget();
  if (workers > static_cast<int>(count)) workers = static_cast<int>(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace clab
