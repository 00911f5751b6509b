#pragma once

// Internal numerical helpers shared by the library sources.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "frozenspec/model.hpp"

namespace frozenspec::detail {

/// 8-point Gauss-Legendre rule on [0,1].
inline constexpr std::array<double, 8> kGaussX = {0.019855071751231856, 0.10166676129318664, 0.2372337950418355,
                                                  0.4082826787521751,   0.5917173212478249,  0.7627662049581645,
                                                  0.8983332387068134,   0.9801449282487681};
inline constexpr std::array<double, 8> kGaussW = {0.05061426814518813, 0.11119051722668724, 0.15685332293894363,
                                                  0.18134189168918100, 0.18134189168918100, 0.15685332293894363,
                                                  0.11119051722668724, 0.05061426814518813};

/// Even panel count for an interval of the given length at `per_pi` panels per pi.
inline int panel_count(double length, int per_pi) {
  int n = static_cast<int>(std::ceil(per_pi * length / pi - 1e-9));
  n = std::max(n, 2);
  if (n % 2) ++n;
  return n;
}

/// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(double lo, double hi, int n, F&& f) {
  const double h = (hi - lo) / n;
  double sum = f(lo) + f(hi);
  for (int j = 1; j < n; ++j) sum += (j % 2 ? 4.0 : 2.0) * f(lo + j * h);
  return sum * h / 3.0;
}

inline double simpson_weight(int j, int n) {
  if (j == 0 || j == n) return 1.0;
  return j % 2 ? 4.0 : 2.0;
}

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks so
/// results written by index are identical to a sequential loop.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 256) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, count / std::max<std::size_t>(1, min_chunk));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, w, &body, &failures] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  // Rethrow the failure a sequential loop would have hit first.
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

}  // namespace frozenspec::detail
