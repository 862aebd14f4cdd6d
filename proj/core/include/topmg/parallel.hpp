#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "topmg/grid.hpp"

namespace topmg {

/// Worker pool size used by parallel_for. 0 means hardware concurrency.
void set_num_threads(int n);
int num_threads();

namespace detail {

int resolved_threads(index_t work_items, index_t grain);

template <typename Body>
void run_blocks(index_t begin, index_t end, int threads, Body&& body) {
  // Static contiguous block partition; every item is processed by exactly one
  // worker, so results are identical for any thread count as long as items
  // write disjoint outputs.
  const index_t n = end - begin;
  const index_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(static_cast<std::size_t>(threads) - 1);
  auto work = [&](int t) {
    try {
      const index_t lo = begin + chunk * t;
      const index_t hi = std::min(end, lo + chunk);
      for (index_t i = lo; i < hi; ++i) body(i, t);
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Runs body(i) for i in [begin, end), split into contiguous blocks across
/// the worker pool. body must only write state owned by item i. grain is the
/// minimum number of items worth a thread; pass 1 for heavyweight items.
template <typename Body>
void parallel_for(index_t begin, index_t end, Body&& body,
                  index_t grain = 256) {
  if (end <= begin) return;
  const int threads = detail::resolved_threads(end - begin, grain);
  if (threads <= 1) {
    for (index_t i = begin; i < end; ++i) body(i);
    return;
  }
  detail::run_blocks(begin, end, threads, [&](index_t i, int) { body(i); });
}

/// parallel_for with one per-thread scratch object built by make_scratch().
template <typename MakeScratch, typename Body>
void parallel_for_with_scratch(index_t begin, index_t end,
                               MakeScratch&& make_scratch, Body&& body,
                               index_t grain = 256) {
  if (end <= begin) return;
  const int threads = detail::resolved_threads(end - begin, grain);
  if (threads <= 1) {
    auto scratch = make_scratch();
    for (index_t i = begin; i < end; ++i) body(i, scratch);
    return;
  }
  using Scratch = decltype(make_scratch());
  std::vector<Scratch> scratch;
  scratch.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) scratch.push_back(make_scratch());
  detail::run_blocks(begin, end, threads, [&](index_t i, int t) {
    body(i, scratch[static_cast<std::size_t>(t)]);
  });
}

}  // namespace topmg
