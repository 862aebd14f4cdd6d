#include "topmg/parallel.hpp"

#include <atomic>

namespace topmg {

namespace {
std::atomic<int> g_num_threads{0};
}

void set_num_threads(int n) { g_num_threads.store(n < 0 ? 0 : n); }

int num_threads() {
  const int n = g_num_threads.load();
  if (n > 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

int resolved_threads(index_t work_items, index_t grain) {
  // Spawning threads for tiny loops costs more than it saves.
  if (grain < 1) grain = 1;
  const int configured = num_threads();
  const index_t cap = std::max<index_t>(1, work_items / grain);
  return static_cast<int>(std::min<index_t>(configured, cap));
}

}  // namespace detail

}  // namespace topmg
