#include "limsup/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "limsup/errors.hpp"
#include "limsup/rng.hpp"

namespace limsup {

namespace {

bool value_less(const Rational& a, const Rational& b) {
  const std::uint64_t lhs = a.p * b.q;
  const std::uint64_t rhs = b.p * a.q;
  return lhs != rhs ? lhs < rhs : a.q < b.q;
}

void check_element_budget(double count) {
  if (count > static_cast<double>(kMaxCoverElements))
    throw SizeError("generation exceeds the desk-scale element budget");
}

double psi_or_throw(const ApproxSetRequest& r, std::uint64_t q) {
  if (!r.psi) throw DomainError(to_string(r.setting) + " needs an approximating function");
  return (*r.psi)(q);
}

double shift(const ApproxSetRequest& r, std::size_t axis) { return axis < r.y.size() ? r.y[axis] : 0.0; }

// Boxes centred at (p + y)/q over all p in {0..q}^dim with the given half-widths.
void add_lattice_boxes(CoverSpec& cover, const ApproxSetRequest& r, std::uint64_t q, int dim,
                       const std::array<double, 3>& half) {
  std::array<std::uint64_t, 3> p{};
  std::array<double, 3> c{};
  const double qd = static_cast<double>(q);
  for (;;) {
    bool keep = true;
    if (r.filter == RationalFilter::Coprime) {
      std::uint64_t g = q;
      for (int a = 0; a < dim; ++a) g = std::gcd(g, p[a]);
      keep = g == 1;
    }
    if (keep) {
      for (int a = 0; a < dim; ++a) c[a] = (static_cast<double>(p[a]) + shift(r, a)) / qd;
      cover.add_box({c.data(), static_cast<std::size_t>(dim)}, {half.data(), static_cast<std::size_t>(dim)});
    }
    int a = 0;
    while (a < dim && ++p[a] > q) p[a++] = 0;
    if (a == dim) break;
  }
}

void add_slabs(CoverSpec& cover, const ApproxSetRequest& r, std::uint64_t q_sup, double thickness) {
  const int n = r.n;
  const long qs = static_cast<long>(q_sup);
  std::array<long, 3> q{};
  std::array<double, 3> normal{};
  const double y = shift(r, 0);
  // All integer vectors of sup norm q_sup, one per +- pair.
  std::array<long, 3> idx{};
  for (int a = 0; a < n; ++a) idx[a] = -qs;
  for (;;) {
    long norm = 0;
    int first = -1;
    for (int a = 0; a < n; ++a) {
      q[a] = idx[a];
      norm = std::max(norm, std::abs(q[a]));
      if (first < 0 && q[a] != 0) first = a;
    }
    if (norm == qs && first >= 0 && q[first] > 0) {
      double lo = 0.0, hi = 0.0;
      for (int a = 0; a < n; ++a) {
        normal[a] = static_cast<double>(q[a]);
        (q[a] < 0 ? lo : hi) += normal[a];
      }
      // |<q,x> + p - y| < psi  <=>  |<q,x> - (y - p)| < psi.
      const auto p_lo = static_cast<long>(std::ceil(y - hi - thickness));
      const auto p_hi = static_cast<long>(std::floor(y - lo + thickness));
      for (long p = p_lo; p <= p_hi; ++p)
        cover.add_slab({normal.data(), static_cast<std::size_t>(n)}, y - static_cast<double>(p), thickness);
    }
    int a = 0;
    while (a < n && ++idx[a] > qs) idx[a++] = -qs;
    if (a == n) break;
  }
}

}  // namespace

std::vector<Rational> rationals(std::uint64_t Q, RationalFilter filter) {
  if (Q < 1) throw DomainError("Q >= 1 required");
  std::vector<Rational> out;
  if (filter == RationalFilter::Coprime) {
    // Farey successor: (a/b, c/d) -> (c/d, (k c - a)/(k d - b)), k = floor((Q + b)/d).
    std::uint64_t a = 0, b = 1, c = 1, d = Q;
    out.push_back({0, 1});
    while (c <= Q) {
      out.push_back({c, d});
      if (c == 1 && d == 1) break;
      const std::uint64_t k = (Q + b) / d;
      const std::uint64_t nc = k * c - a;
      const std::uint64_t nd = k * d - b;
      a = c;
      b = d;
      c = nc;
      d = nd;
    }
    return out;
  }
  if (static_cast<double>(Q) * static_cast<double>(Q) > static_cast<double>(kMaxCoverElements))
    throw SizeError("rational enumeration too large");
  for (std::uint64_t q = 1; q <= Q; ++q)
    for (std::uint64_t p = 0; p <= q; ++p) out.push_back({p, q});
  std::sort(out.begin(), out.end(), value_less);
  return out;
}

std::string to_string(ApproxSetting s) {
  switch (s) {
    case ApproxSetting::SimultaneousBalls: return "SimultaneousBalls";
    case ApproxSetting::WeightedRectangles: return "WeightedRectangles";
    case ApproxSetting::LinearFormsSlabs: return "LinearFormsSlabs";
    case ApproxSetting::CantorRestricted: return "CantorRestricted";
  }
  return "SimultaneousBalls";
}

ApproxSetting approx_setting_from_string(const std::string& name) {
  for (auto s : {ApproxSetting::SimultaneousBalls, ApproxSetting::WeightedRectangles,
                 ApproxSetting::LinearFormsSlabs, ApproxSetting::CantorRestricted})
    if (to_string(s) == name) return s;
  throw DomainError("unknown approximation setting: " + name);
}

bool in_cantor_set(std::uint64_t p, unsigned n) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= 3;
  if (p > q) return false;
  if (p == q) return true;
  // Ternary digits of p (least significant first); a trailing 1 followed by zeros
  // rewrites as 0222..., so only the lowest nonzero digit may be 1.
  bool seen_nonzero = false;
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t digit = p % 3;
    p /= 3;
    if (digit == 1 && seen_nonzero) return false;
    if (digit != 0) seen_nonzero = true;
  }
  return true;
}

CoverSpec approx_set_union(const ApproxSetRequest& r) {
  if (r.q_max < 1 || r.q_min < 1 || r.q_min > r.q_max) throw DomainError("need 1 <= q_min <= q_max");
  CoverSpec cover;
  const double span = static_cast<double>(r.q_max);
  switch (r.setting) {
    case ApproxSetting::SimultaneousBalls: {
      if (r.k < 1 || r.k > 3) throw DomainError("simultaneous balls need k in 1..3");
      check_element_budget(std::pow(span + 1.0, r.k + 1) / (r.k + 1));
      cover = make_cover(r.k, r.k == 1 ? Geometry::Intervals : Geometry::Rectangles);
      for (std::uint64_t q = r.q_min; q <= r.q_max; ++q) {
        const double h = psi_or_throw(r, q) / static_cast<double>(q);
        if (!(h > 0.0)) continue;
        add_lattice_boxes(cover, r, q, r.k, {h, h, h});
      }
      break;
    }
    case ApproxSetting::WeightedRectangles: {
      if (r.k < 1 || r.k > 3) throw DomainError("weighted rectangles need k in 1..3");
      if (static_cast<int>(r.tau.size()) != r.k) throw DomainError("weighted rectangles need k exponents tau");
      for (double t : r.tau)
        if (!(t > 0.0)) throw DomainError("tau_i must be positive");
      check_element_budget(std::pow(span + 1.0, r.k + 1) / (r.k + 1));
      cover = make_cover(r.k, r.k == 1 ? Geometry::Intervals : Geometry::Rectangles);
      for (std::uint64_t q = r.q_min; q <= r.q_max; ++q) {
        std::array<double, 3> h{};
        for (int a = 0; a < r.k; ++a) h[a] = std::pow(static_cast<double>(q), -r.tau[a] - 1.0);
        add_lattice_boxes(cover, r, q, r.k, h);
      }
      break;
    }
    case ApproxSetting::LinearFormsSlabs: {
      if (r.n < 1 || r.m < 1) throw DomainError("n, m >= 1 required");
      if (r.n * r.m > 3) throw SizeError("linear forms are limited to nm <= 3");
      if (r.n == 1) {
        // One q: a box of half-width psi(q)/q in each of the m coordinates.
        check_element_budget(std::pow(span + 1.0, r.m + 1) / (r.m + 1));
        cover = make_cover(r.m, r.m == 1 ? Geometry::Intervals : Geometry::Rectangles);
        for (std::uint64_t q = r.q_min; q <= r.q_max; ++q) {
          const double h = psi_or_throw(r, q) / static_cast<double>(q);
          if (!(h > 0.0)) continue;
          add_lattice_boxes(cover, r, q, r.m, {h, h, h});
        }
      } else {
        check_element_budget(std::pow(2.0 * span + 1.0, r.n) * span);
        cover = make_cover(r.n, Geometry::Slabs);
        for (std::uint64_t q = r.q_min; q <= r.q_max; ++q) {
          const double t = psi_or_throw(r, q);
          if (!(t > 0.0)) continue;
          add_slabs(cover, r, q, t);
        }
      }
      break;
    }
    case ApproxSetting::CantorRestricted: {
      cover = make_cover(1, Geometry::Intervals);
      std::uint64_t q = 1;
      for (unsigned level = 0; q <= r.q_max; ++level, q *= 3) {
        if (q >= r.q_min) {
          const double h = psi_or_throw(r, q);
          if (h > 0.0) {
            check_element_budget(static_cast<double>(cover.size()) + std::pow(2.0, level));
            for (std::uint64_t p = 0; p <= q; ++p) {
              if (!in_cantor_set(p, level)) continue;
              const double c = static_cast<double>(p) / static_cast<double>(q);
              cover.add_box({&c, 1}, {&h, 1});
            }
          }
        }
        if (q > r.q_max / 3) break;
      }
      break;
    }
  }
  cover.window_lo = r.q_min;
  cover.window_hi = r.q_max;
  return cover;
}

RandomCover random_cover(const RadiiRule& radii, std::uint64_t n, int k, std::uint64_t seed) {
  if (n < 1) throw DomainError("N >= 1 required");
  if (k < 1 || k > 3) throw DomainError("random covers need k in 1..3");
  if (n > radii.max_index()) throw DomainError("radii rule is shorter than N");
  RandomCover out;
  out.sample.seed = seed;
  out.sample.radii = radii;
  out.sample.k = k;
  out.sample.n = n;
  const CounterRng rng(seed);
  out.sample.translations.resize(n * static_cast<std::uint64_t>(k));
  for (std::uint64_t i = 0; i < n * static_cast<std::uint64_t>(k); ++i) out.sample.translations[i] = rng.uniform(i);
  out.cover = random_cover_window(out.sample, 1, n);
  return out;
}

CoverSpec random_cover_window(const RandomCoverSample& sample, std::uint64_t first, std::uint64_t last) {
  if (first < 1 || first > last || last > sample.n) throw DomainError("need 1 <= first <= last <= N");
  CoverSpec cover = make_cover(sample.k, sample.k == 1 ? Geometry::Intervals : Geometry::Rectangles, true);
  cover.centers.reserve((last - first + 1) * sample.k);
  cover.half_widths.reserve((last - first + 1) * sample.k);
  std::array<double, 3> h{};
  for (std::uint64_t i = first; i <= last; ++i) {
    h.fill(sample.radii(i));
    cover.add_box({sample.translations.data() + (i - 1) * sample.k, static_cast<std::size_t>(sample.k)},
                  {h.data(), static_cast<std::size_t>(sample.k)});
  }
  cover.window_lo = first;
  cover.window_hi = last;
  return cover;
}

CoverSpec ifs_cover(const std::vector<double>& ratios, int depth) {
  if (ratios.empty()) throw DomainError("at least one ratio required");
  if (depth < 0) throw DomainError("depth >= 0 required");
  double total = 0.0;
  for (double c : ratios) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("ratios must lie in (0,1)");
    total += c;
  }
  if (total > 1.0 + 1e-12) throw DomainError("ratios sum above 1: images overlap");
  if (std::pow(static_cast<double>(ratios.size()), depth) > static_cast<double>(kMaxCoverElements))
    throw SizeError("IFS cover too large");
  const std::size_t n = ratios.size();
  const double gap = n > 1 ? (1.0 - total) / static_cast<double>(n - 1) : 0.0;
  std::vector<double> shifts(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) shifts[i] = shifts[i - 1] + ratios[i - 1] + gap;

  // Intervals as (left, length), refined level by level.
  std::vector<std::pair<double, double>> level{{0.0, 1.0}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<double, double>> next;
    next.reserve(level.size() * n);
    for (const auto& [left, len] : level)
      for (std::size_t i = 0; i < n; ++i) next.emplace_back(left + len * shifts[i], len * ratios[i]);
    level.swap(next);
  }
  CoverSpec cover = make_cover(1, Geometry::Intervals);
  cover.centers.reserve(level.size());
  cover.half_widths.reserve(level.size());
  for (const auto& [left, len] : level) {
    cover.centers.push_back(left + 0.5 * len);
    cover.half_widths.push_back(0.5 * len);
  }
  cover.window_lo = static_cast<std::uint64_t>(depth);
  cover.window_hi = static_cast<std::uint64_t>(depth);
  return cover;
}

}  // namespace limsup
