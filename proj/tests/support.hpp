#pragma once
// Shared helpers for the unit tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "spence_abel/circle_geometry.hpp"

namespace test_support {

// Sorted angles in [0, 2π) with a minimum gap, so no tuple is near-degenerate.
inline std::vector<double> random_angles(std::mt19937_64& gen, int k,
                                         double min_gap = 0.05) {
  std::uniform_real_distribution<double> u(0.0, spence_abel::kTwoPi);
  for (;;) {
    std::vector<double> a(k);
    for (auto& x : a) x = u(gen);
    std::sort(a.begin(), a.end());
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      const double next = i + 1 < k ? a[i + 1] : a[0] + spence_abel::kTwoPi;
      if (next - a[i] < min_gap) ok = false;
    }
    if (ok) return a;
  }
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace test_support
