#pragma once

// Independent brute-force references used to check the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "limsup/cover.hpp"

namespace oracle {

// Union length by scanning sorted endpoints with a depth counter.
inline double union_length(const std::vector<std::pair<double, double>>& ivs) {
  std::vector<std::pair<double, int>> ev;
  for (auto [a, b] : ivs) {
    a = std::max(a, 0.0);
    b = std::min(b, 1.0);
    if (b <= a) continue;
    ev.emplace_back(a, +1);
    ev.emplace_back(b, -1);
  }
  std::sort(ev.begin(), ev.end());
  double total = 0.0;
  int depth = 0;
  double last = 0.0;
  for (const auto& [x, d] : ev) {
    if (depth > 0) total += x - last;
    depth += d;
    last = x;
  }
  return total;
}

// Grid cells meeting a box cover, by testing every cell against every element
// (open boxes, non-torus, k <= 2).
inline std::uint64_t box_count(const limsup::CoverSpec& cover, double delta) {
  const auto g = static_cast<std::int64_t>(std::ceil(1.0 / delta - 1e-9));
  const std::int64_t gy = cover.k == 2 ? g : 1;
  std::uint64_t count = 0;
  for (std::int64_t i = 0; i < g; ++i)
    for (std::int64_t j = 0; j < gy; ++j) {
      const double lo[2] = {i * delta, j * delta};
      const double hi[2] = {std::min(1.0, (i + 1) * delta), std::min(1.0, (j + 1) * delta)};
      bool hit = false;
      for (std::size_t e = 0; e < cover.size() && !hit; ++e) {
        bool meets = true;
        for (int a = 0; a < cover.k; ++a) {
          const double c = cover.centers[e * cover.k + a];
          const double h = cover.half_widths[e * cover.k + a];
          // The open box (c-h, c+h), clipped to [0,1], must meet [lo, hi).
          const double l = std::max(c - h, 0.0);
          const double u = std::min(c + h, 1.0);
          const bool last_cell = hi[a] >= 1.0;
          if (!(l < hi[a] || (last_cell && l <= hi[a])) || !(u > lo[a])) meets = false;
          if (u <= l) meets = false;
        }
        hit = meets;
      }
      count += hit;
    }
  return count;
}

inline std::uint64_t gcd_totient(std::uint64_t q) {
  std::uint64_t c = 0;
  for (std::uint64_t p = 1; p <= q; ++p) c += std::gcd(p, q) == 1;
  return c;
}

// Riesz s-energy of [0,1]: integral of |x-y|^-s = 2/((1-s)(2-s)).
inline double unit_interval_energy(double s) { return 2.0 / ((1.0 - s) * (2.0 - s)); }

// Direct minimisation over j of (k+1+j tau_j - sum_{i<=j} tau_i)/(1+tau_j).
inline double direct_min_expression(const std::vector<double>& tau) {
  const int k = static_cast<int>(tau.size());
  double best = INFINITY;
  double partial = 0.0;
  for (int j = 1; j <= k; ++j) {
    partial += tau[j - 1];
    best = std::min(best, (k + 1 + j * tau[j - 1] - partial) / (1.0 + tau[j - 1]));
  }
  return best;
}

inline double kahan_sum_power(double e, std::uint64_t n) {
  double s = 0.0;
  double c = 0.0;
  for (std::uint64_t q = n; q >= 1; --q) {
    const double y = std::pow(static_cast<double>(q), e) - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace oracle
