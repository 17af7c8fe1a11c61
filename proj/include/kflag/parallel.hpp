#pragma once

// Layered parallel loops over Weyl group elements.  Elements are stored in
// length order, so each length layer is a contiguous index range; work inside
// a layer may only read results from earlier layers.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <thread>
#include <vector>

#include "kflag/weyl.hpp"

namespace kflag {

/// Worker count: KFLAG_THREADS if set, else the hardware concurrency.
inline int worker_count() {
  if (const char* s = std::getenv("KFLAG_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(i) for i in [begin, end) on up to worker_count() threads.
/// Exceptions from workers are rethrown on the calling thread.
inline void parallel_range(int begin, int end, const std::function<void(int)>& f) {
  const int n = end - begin;
  const int k = std::min(worker_count(), n);
  if (k <= 1) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  std::vector<std::future<void>> jobs;
  for (int t = 0; t < k; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (int i = begin + t; i < end; i += k) f(i);
    }));
  for (auto& j : jobs) j.get();
}

/// Calls f(w) for every w, layer by layer in increasing (or decreasing)
/// length.
inline void for_each_by_length(const WeylGroup& W, bool ascending, const std::function<void(Elt)>& f) {
  std::vector<std::pair<int, int>> layers;  // [begin, end) per length
  for (Elt w = 0; w < W.size();) {
    Elt e = w;
    while (e < W.size() && W.length(e) == W.length(w)) ++e;
    layers.emplace_back(w, e);
    w = e;
  }
  if (!ascending) std::reverse(layers.begin(), layers.end());
  for (auto [b, e] : layers) parallel_range(b, e, [&](int w) { f(w); });
}

}  // namespace kflag
