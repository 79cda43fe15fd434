// Internal helpers shared by the experiment implementations.

#pragma once

#include <filesystem>
#include <functional>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace scmac::detail {

// Quantization step mapping the array's max magnitude to the top positive
// code; zero arrays get a benign nonzero step.
inline double full_range_step(double max_abs, int bits) {
  const double top = double((1 << (bits - 1)) - 1);
  return max_abs > 0.0 ? max_abs / top : 1.0;
}

// Static chunking over [0, total); deterministic results regardless of the
// thread count because work items are indexed.
inline void parallel_for(long long total, int threads,
                         const std::function<void(long long)>& fn) {
  if (threads <= 1 || total < 2) {
    for (long long i = 0; i < total; ++i) fn(i);
    return;
  }
  const int nt = int(std::min<long long>(threads, total));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([=, &fn]() {
      for (long long i = t; i < total; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline bool want_artifacts(const std::filesystem::path& out_dir) {
  return !out_dir.empty();
}

}  // namespace scmac::detail
