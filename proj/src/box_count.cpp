#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "limsup/errors.hpp"
#include "limsup/estimators.hpp"

namespace limsup {

namespace {

using Index = std::int64_t;

struct Range {
  Index lo;  // inclusive cell indices
  Index hi;
};

struct Box3 {
  std::array<Range, 3> r;
};

// Elements are open sets; shrinking by a hair keeps boxes that only touch a grid
// line from counting the neighbouring cell.
constexpr double kShrink = 1e-9;

Index grid_cells(double delta) { return static_cast<Index>(std::ceil(1.0 / delta - 1e-9)); }

// Cell ranges of the open interval (a, b), clipped or wrapped; appends 0..2 ranges.
void interval_cells(double a, double b, double delta, Index g, bool torus, std::vector<Range>& out) {
  const double eps = std::min(kShrink * delta, 0.25 * (b - a));
  a += eps;
  b -= eps;
  if (!torus) {
    a = std::max(a, 0.0);
    b = std::min(b, 1.0);
    if (!(b >= a)) return;
    Index lo = static_cast<Index>(std::floor(a / delta));
    Index hi = static_cast<Index>(std::floor(b / delta));
    lo = std::clamp<Index>(lo, 0, g - 1);
    hi = std::clamp<Index>(hi, 0, g - 1);
    if (lo <= hi) out.push_back({lo, hi});
    return;
  }
  const Index lo = static_cast<Index>(std::floor(a / delta));
  const Index hi = static_cast<Index>(std::floor(b / delta));
  if (hi - lo + 1 >= g) {
    out.push_back({0, g - 1});
    return;
  }
  const Index wl = ((lo % g) + g) % g;
  const Index wh = wl + (hi - lo);
  if (wh < g) {
    out.push_back({wl, wh});
  } else {
    out.push_back({wl, g - 1});
    out.push_back({0, wh - g});
  }
}

std::uint64_t merged_count(std::vector<Range>& ranges) {
  if (ranges.empty()) return 0;
  std::sort(ranges.begin(), ranges.end(), [](const Range& x, const Range& y) { return x.lo < y.lo; });
  std::uint64_t total = 0;
  Index cur_lo = ranges[0].lo;
  Index cur_hi = ranges[0].hi;
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].lo <= cur_hi + 1) {
      cur_hi = std::max(cur_hi, ranges[i].hi);
    } else {
      total += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
      cur_lo = ranges[i].lo;
      cur_hi = ranges[i].hi;
    }
  }
  return total + static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
}

// Area of a union of half-open integer rectangles [x.lo, x.hi+1) x [y.lo, y.hi+1).
class AreaSweep {
 public:
  std::uint64_t area(const std::vector<std::pair<Range, Range>>& rects) {
    if (rects.empty()) return 0;
    ys_.clear();
    for (const auto& [x, y] : rects) {
      ys_.push_back(y.lo);
      ys_.push_back(y.hi + 1);
    }
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
    const std::size_t segments = ys_.size() - 1;
    size_ = 1;
    while (size_ < segments) size_ <<= 1;
    count_.assign(2 * size_, 0);
    covered_.assign(2 * size_, 0);
    events_.clear();
    for (const auto& [x, y] : rects) {
      const auto a = static_cast<std::uint32_t>(std::lower_bound(ys_.begin(), ys_.end(), y.lo) - ys_.begin());
      const auto b = static_cast<std::uint32_t>(std::lower_bound(ys_.begin(), ys_.end(), y.hi + 1) - ys_.begin());
      events_.push_back({x.lo, +1, a, b});
      events_.push_back({x.hi + 1, -1, a, b});
    }
    std::sort(events_.begin(), events_.end(), [](const Event& p, const Event& q) { return p.x < q.x; });
    std::uint64_t total = 0;
    Index prev = events_.front().x;
    for (const auto& e : events_) {
      total += static_cast<std::uint64_t>(covered_[1]) * static_cast<std::uint64_t>(e.x - prev);
      prev = e.x;
      update(1, 0, size_, e.a, e.b, e.delta);
    }
    return total;
  }

 private:
  struct Event {
    Index x;
    int delta;
    std::uint32_t a;
    std::uint32_t b;
  };

  Index segment_length(std::size_t lo, std::size_t hi) const {
    const std::size_t last = ys_.size() - 1;
    const std::size_t l = std::min(lo, last);
    const std::size_t h = std::min(hi, last);
    return ys_[h] - ys_[l];
  }

  void update(std::size_t node, std::size_t lo, std::size_t hi, std::uint32_t a, std::uint32_t b, int delta) {
    if (b <= lo || hi <= a) return;
    if (a <= lo && hi <= b) {
      count_[node] += delta;
    } else {
      const std::size_t mid = (lo + hi) / 2;
      update(2 * node, lo, mid, a, b, delta);
      update(2 * node + 1, mid, hi, a, b, delta);
    }
    if (count_[node] > 0)
      covered_[node] = segment_length(lo, hi);
    else if (hi - lo == 1)
      covered_[node] = 0;
    else
      covered_[node] = covered_[2 * node] + covered_[2 * node + 1];
  }

  std::vector<Index> ys_;
  std::vector<int> count_;
  std::vector<Index> covered_;
  std::vector<Event> events_;
  std::size_t size_ = 1;
};

void check_work(double work) {
  if (work > kBoxCountWorkLimit) throw SizeError("box count exceeds the desk-scale work budget");
}

double log2_or_one(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))); }

std::vector<Box3> box_ranges(const CoverSpec& cover, double delta, Index g) {
  std::vector<Box3> out;
  out.reserve(cover.size());
  std::array<std::vector<Range>, 3> axis;
  for (std::size_t e = 0; e < cover.size(); ++e) {
    const auto c = cover.center(e);
    const auto h = cover.half_width(e);
    bool empty = false;
    for (int a = 0; a < cover.k; ++a) {
      axis[a].clear();
      interval_cells(c[a] - h[a], c[a] + h[a], delta, g, cover.torus, axis[a]);
      empty = empty || axis[a].empty();
    }
    if (empty) continue;
    // Torus wrap can split each axis in two.
    const std::size_t ny = cover.k > 1 ? axis[1].size() : 1;
    const std::size_t nz = cover.k > 2 ? axis[2].size() : 1;
    for (const Range& rx : axis[0])
      for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t iz = 0; iz < nz; ++iz) {
          Box3 b{};
          b.r[0] = rx;
          b.r[1] = cover.k > 1 ? axis[1][iy] : Range{0, 0};
          b.r[2] = cover.k > 2 ? axis[2][iz] : Range{0, 0};
          out.push_back(b);
        }
  }
  return out;
}

std::uint64_t count_boxes(const CoverSpec& cover, double delta) {
  const Index g = grid_cells(delta);
  const std::size_t n = cover.size();
  const double logn = log2_or_one(n);
  if (cover.k == 1) {
    check_work(static_cast<double>(n) * logn);
    std::vector<Range> ranges;
    ranges.reserve(n);
    for (std::size_t e = 0; e < n; ++e)
      interval_cells(cover.centers[e] - cover.half_widths[e], cover.centers[e] + cover.half_widths[e], delta, g,
                     cover.torus, ranges);
    return merged_count(ranges);
  }
  if (cover.k == 2) {
    check_work(static_cast<double>(n) * logn);
    const auto boxes = box_ranges(cover, delta, g);
    std::vector<std::pair<Range, Range>> rects;
    rects.reserve(boxes.size());
    for (const auto& b : boxes) rects.emplace_back(b.r[0], b.r[1]);
    AreaSweep sweep;
    return sweep.area(rects);
  }
  check_work(2.0 * static_cast<double>(n) * static_cast<double>(n) * logn);
  const auto boxes = box_ranges(cover, delta, g);
  std::vector<Index> zs;
  for (const auto& b : boxes) {
    zs.push_back(b.r[2].lo);
    zs.push_back(b.r[2].hi + 1);
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  AreaSweep sweep;
  std::uint64_t total = 0;
  std::vector<std::pair<Range, Range>> active;
  for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
    active.clear();
    for (const auto& b : boxes)
      if (b.r[2].lo <= zs[i] && b.r[2].hi + 1 >= zs[i + 1]) active.emplace_back(b.r[0], b.r[1]);
    total += sweep.area(active) * static_cast<std::uint64_t>(zs[i + 1] - zs[i]);
  }
  return total;
}

// Slabs: for every column of the grid in the leading axes, the cells of the last
// axis hit by each slab form one range; ranges are merged per column.
std::uint64_t count_slabs(const CoverSpec& cover, double delta) {
  const Index g = grid_cells(delta);
  const int k = cover.k;
  const std::size_t n = cover.size();
  if (k == 1) {
    std::vector<Range> ranges;
    for (std::size_t e = 0; e < n; ++e) {
      const double nx = cover.normals[e];
      const double a = (cover.offsets[e] - cover.thickness[e]) / nx;
      const double b = (cover.offsets[e] + cover.thickness[e]) / nx;
      interval_cells(std::min(a, b), std::max(a, b), delta, g, false, ranges);
    }
    return merged_count(ranges);
  }
  const double columns = std::pow(static_cast<double>(g), k - 1);
  check_work(static_cast<double>(n) * columns);
  std::uint64_t total = 0;
  std::vector<Range> ranges;
  const Index gy = k == 3 ? g : 1;
  for (Index ix = 0; ix < g; ++ix) {
    for (Index iy = 0; iy < gy; ++iy) {
      ranges.clear();
      for (std::size_t e = 0; e < n; ++e) {
        const double* nv = cover.normals.data() + e * k;
        const double last = nv[k - 1];
        const double o = cover.offsets[e];
        const double t = cover.thickness[e];
        // Extremes of the leading part <n', x'> over the column.
        double lead_lo = 0.0;
        double lead_hi = 0.0;
        const std::array<Index, 2> cell{ix, iy};
        for (int a = 0; a < k - 1; ++a) {
          const double x0 = static_cast<double>(cell[a]) * delta;
          const double x1 = std::min(1.0, x0 + delta);
          lead_lo += std::min(nv[a] * x0, nv[a] * x1);
          lead_hi += std::max(nv[a] * x0, nv[a] * x1);
        }
        if (last == 0.0) {
          if (lead_hi > o - t && lead_lo < o + t) ranges.push_back({0, g - 1});
          continue;
        }
        const double y0 = (o - t - lead_hi) / last;
        const double y1 = (o + t - lead_lo) / last;
        const double y2 = (o - t - lead_lo) / last;
        const double y3 = (o + t - lead_hi) / last;
        interval_cells(std::min({y0, y1, y2, y3}), std::max({y0, y1, y2, y3}), delta, g, false, ranges);
      }
      total += merged_count(ranges);
    }
  }
  return total;
}

}  // namespace

std::uint64_t box_count(const CoverSpec& cover, double delta) {
  if (!(delta > 0.0) || delta > 1.0) throw DomainError("box size delta must lie in (0,1]");
  if (cover.k < 1 || cover.k > 3) throw DomainError("box counting supports k = 1..3");
  if (cover.empty()) return 0;
  if (cover.geometry == Geometry::Slabs) return count_slabs(cover, delta);
  return count_boxes(cover, delta);
}

}  // namespace limsup
