#include "limsup/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "limsup/errors.hpp"

namespace limsup::kernels {

namespace {

// Surface area of the unit sphere S^{k-1}.
double sphere_area(int k) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
}

bool in_energy_domain(const EnergyProblem& p, const double* y) {
  if (p.shape == EnergyShape::Box) {
    for (int a = 0; a < p.k; ++a)
      if (!(std::abs(y[a] - p.center[a]) < p.half_width[a])) return false;
    return true;
  }
  double r2 = 0.0;
  for (int a = 0; a < p.k; ++a) r2 += (y[a] - p.center[a]) * (y[a] - p.center[a]);
  return r2 < p.radius * p.radius;
}

struct EnergySampler {
  const EnergyProblem& p;
  double scale;
  double diameter;

  explicit EnergySampler(const EnergyProblem& problem) : p(problem) {
    if (p.k < 1 || p.k > 3) throw DomainError("energy estimation supports k = 1..3");
    if (!(p.s < p.k)) throw DomainError("energy estimation needs s < k");
    diameter = energy_diameter(p);
    scale = energy_volume(p) * sphere_area(p.k) * std::pow(diameter, p.k - p.s) / (p.k - p.s);
  }

  double draw(const CounterRng& rng, std::uint64_t i) const {
    const CounterRng r = rng.split(i);
    std::uint64_t j = 0;
    std::array<double, 3> x{};
    if (p.shape == EnergyShape::Box) {
      for (int a = 0; a < p.k; ++a) x[a] = p.center[a] + (2.0 * r.uniform(j++) - 1.0) * p.half_width[a];
    } else {
      for (;;) {
        double r2 = 0.0;
        for (int a = 0; a < p.k; ++a) {
          const double v = 2.0 * r.uniform(j++) - 1.0;
          x[a] = v;
          r2 += v * v;
        }
        if (r2 < 1.0) break;
      }
      for (int a = 0; a < p.k; ++a) x[a] = p.center[a] + p.radius * x[a];
    }
    std::array<double, 3> u{};
    if (p.k == 1) {
      u[0] = r.uniform(j++) < 0.5 ? -1.0 : 1.0;
    } else if (p.k == 2) {
      const double phi = 2.0 * std::numbers::pi * r.uniform(j++);
      u = {std::cos(phi), std::sin(phi), 0.0};
    } else {
      const double z = 2.0 * r.uniform(j++) - 1.0;
      const double phi = 2.0 * std::numbers::pi * r.uniform(j++);
      const double w = std::sqrt(std::max(0.0, 1.0 - z * z));
      u = {w * std::cos(phi), w * std::sin(phi), z};
    }
    // Inverse CDF of rho^{k-1-s} on [0, diameter].
    const double rho = diameter * std::pow(1.0 - r.uniform(j++), 1.0 / (p.k - p.s));
    std::array<double, 3> y{};
    for (int a = 0; a < p.k; ++a) y[a] = x[a] + rho * u[a];
    if (!in_energy_domain(p, y.data())) return 0.0;
    return p.weight ? scale * p.weight(rho) : scale;
  }
};

MonteCarloResult finish(double sum, double sum_sq, std::uint64_t n) {
  MonteCarloResult out;
  out.samples = n;
  if (n == 0) return out;
  out.mean = sum / static_cast<double>(n);
  const double var = n > 1 ? std::max(0.0, (sum_sq - sum * out.mean) / static_cast<double>(n - 1)) : 0.0;
  out.standard_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

void uniform_point(const CounterRng& rng, std::uint64_t i, int k, double* x) {
  for (int a = 0; a < k; ++a) x[a] = rng.uniform(i * 3 + static_cast<std::uint64_t>(a));
}

struct Task {
  std::size_t block;
  std::uint64_t lo;
  std::uint64_t hi;
};

}  // namespace

double energy_volume(const EnergyProblem& p) {
  if (p.shape == EnergyShape::Box) {
    double v = 1.0;
    for (int a = 0; a < p.k; ++a) v *= 2.0 * p.half_width[a];
    return v;
  }
  return std::pow(std::numbers::pi, 0.5 * p.k) / std::tgamma(0.5 * p.k + 1.0) * std::pow(p.radius, p.k);
}

double energy_diameter(const EnergyProblem& p) {
  if (p.shape == EnergyShape::Ball) return 2.0 * p.radius;
  double d2 = 0.0;
  for (int a = 0; a < p.k; ++a) d2 += 4.0 * p.half_width[a] * p.half_width[a];
  return std::sqrt(d2);
}

// ----- CoverIndex -----------------------------------------------------------

namespace {

int grid_for(int k) { return k == 1 ? 1 << 14 : k == 2 ? 256 : 32; }

// Cell range [lo, hi) along one axis for the open interval (a, b); wraps on the torus.
struct AxisRange {
  long lo;
  long hi;
};

AxisRange axis_range(double a, double b, int grid, bool torus) {
  if (torus && b - a >= 1.0) return {0, grid};
  if (!torus) {
    a = std::max(a, 0.0);
    b = std::min(b, 1.0);
    if (!(b > a)) return {0, 0};
  }
  auto lo = static_cast<long>(std::floor(a * grid));
  auto hi = static_cast<long>(std::ceil(b * grid));
  if (!torus) {
    lo = std::clamp(lo, 0L, static_cast<long>(grid));
    hi = std::clamp(hi, 0L, static_cast<long>(grid));
  }
  return {lo, hi};
}

long wrap(long i, int grid) {
  const long g = grid;
  return ((i % g) + g) % g;
}

template <typename Visit>
void visit_box_cells(const CoverSpec& cover, std::size_t e, int grid, Visit&& visit) {
  const int k = cover.k;
  std::array<AxisRange, 3> range{};
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  for (int a = 0; a < k; ++a) {
    lo[a] = cover.centers[e * k + a] - cover.half_widths[e * k + a];
    hi[a] = cover.centers[e * k + a] + cover.half_widths[e * k + a];
    range[a] = axis_range(lo[a], hi[a], grid, cover.torus);
    if (range[a].hi <= range[a].lo) return;
  }
  const bool whole = cover.torus;
  auto full_axis = [&](int a, long i) {
    if (whole && hi[a] - lo[a] >= 1.0) return true;
    const double c0 = static_cast<double>(i) / grid;
    const double c1 = static_cast<double>(i + 1) / grid;
    return c0 >= lo[a] && c1 <= hi[a];
  };
  std::array<long, 3> idx{};
  for (idx[0] = range[0].lo; idx[0] < range[0].hi; ++idx[0]) {
    const long y_lo = k > 1 ? range[1].lo : 0;
    const long y_hi = k > 1 ? range[1].hi : 1;
    for (idx[1] = y_lo; idx[1] < y_hi; ++idx[1]) {
      const long z_lo = k > 2 ? range[2].lo : 0;
      const long z_hi = k > 2 ? range[2].hi : 1;
      for (idx[2] = z_lo; idx[2] < z_hi; ++idx[2]) {
        std::size_t cell = 0;
        bool full = true;
        for (int a = 0; a < k; ++a) {
          cell = cell * grid + static_cast<std::size_t>(cover.torus ? wrap(idx[a], grid) : idx[a]);
          full = full && full_axis(a, idx[a]);
        }
        visit(cell, full);
      }
    }
  }
}

template <typename Visit>
void visit_slab_cells(const CoverSpec& cover, std::size_t e, int grid, Visit&& visit) {
  const int k = cover.k;
  const double* n = cover.normals.data() + e * k;
  const double o = cover.offsets[e];
  const double t = cover.thickness[e];
  const double cell = 1.0 / grid;
  double spread = 0.0;
  for (int a = 0; a < k; ++a) spread += 0.5 * cell * std::abs(n[a]);
  auto classify = [&](const std::array<long, 3>& idx, std::size_t id) {
    double mid = 0.0;
    for (int a = 0; a < k; ++a) mid += n[a] * (static_cast<double>(idx[a]) + 0.5) * cell;
    const double lo = mid - spread;
    const double hi = mid + spread;
    if (hi <= o - t || lo >= o + t) return;
    visit(id, lo >= o - t && hi <= o + t);
  };
  if (k == 2) {
    // Walk along the axis with the smaller normal component, bounding the other.
    const int major = std::abs(n[1]) >= std::abs(n[0]) ? 1 : 0;
    const int minor = 1 - major;
    for (long i = 0; i < grid; ++i) {
      double y0 = std::numeric_limits<double>::infinity();
      double y1 = -y0;
      for (long edge = i; edge <= i + 1; ++edge) {
        const double x = static_cast<double>(edge) * cell;
        const double a = (o - t - n[minor] * x) / n[major];
        const double b = (o + t - n[minor] * x) / n[major];
        y0 = std::min({y0, a, b});
        y1 = std::max({y1, a, b});
      }
      const AxisRange r = axis_range(y0, y1, grid, false);
      for (long j = r.lo; j < r.hi; ++j) {
        std::array<long, 3> idx{};
        idx[minor] = i;
        idx[major] = j;
        classify(idx, static_cast<std::size_t>(idx[0] * grid + idx[1]));
      }
    }
    return;
  }
  const long extent_y = k > 1 ? grid : 1;
  const long extent_z = k > 2 ? grid : 1;
  std::array<long, 3> idx{};
  for (idx[0] = 0; idx[0] < grid; ++idx[0])
    for (idx[1] = 0; idx[1] < extent_y; ++idx[1])
      for (idx[2] = 0; idx[2] < extent_z; ++idx[2]) {
        std::size_t id = 0;
        for (int a = 0; a < k; ++a) id = id * grid + static_cast<std::size_t>(idx[a]);
        classify(idx, id);
      }
}

}  // namespace

CoverIndex::CoverIndex(const CoverSpec& cover) : cover_(&cover), grid_(grid_for(cover.k)) {
  std::size_t cells = 1;
  for (int a = 0; a < cover.k; ++a) cells *= static_cast<std::size_t>(grid_);
  full_.assign(cells, 0);
  std::vector<std::uint32_t> count(cells + 1, 0);
  auto for_each = [&](auto&& visit) {
    for (std::size_t e = 0; e < cover.size(); ++e) {
      auto tagged = [&](std::size_t cell, bool full) { visit(e, cell, full); };
      if (cover.geometry == Geometry::Slabs)
        visit_slab_cells(cover, e, grid_, tagged);
      else
        visit_box_cells(cover, e, grid_, tagged);
    }
  };
  for_each([&](std::size_t, std::size_t cell, bool full) {
    if (full)
      full_[cell] = 1;
    else
      ++count[cell + 1];
  });
  for (std::size_t c = 0; c < cells; ++c) count[c + 1] += count[c];
  start_ = count;
  items_.resize(count[cells]);
  for_each([&](std::size_t e, std::size_t cell, bool full) {
    if (!full) items_[count[cell]++] = static_cast<std::uint32_t>(e);
  });
}

std::size_t CoverIndex::cell_of(const double* x) const {
  std::size_t cell = 0;
  for (int a = 0; a < cover_->k; ++a) {
    auto i = static_cast<long>(x[a] * grid_);
    i = std::clamp(i, 0L, static_cast<long>(grid_ - 1));
    cell = cell * grid_ + static_cast<std::size_t>(i);
  }
  return cell;
}

bool CoverIndex::contains(const double* x) const {
  const std::size_t cell = cell_of(x);
  if (full_[cell]) return true;
  for (std::uint32_t i = start_[cell]; i < start_[cell + 1]; ++i)
    if (cover_->element_contains(items_[i], x)) return true;
  return false;
}

// ----- serial reference ---------------------------------------------------------

namespace serial {

std::vector<double> block_sums(const TermFn& term, const std::vector<std::uint64_t>& edges) {
  std::vector<double> out(edges.empty() ? 0 : edges.size() - 1, 0.0);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    double sum = 0.0;
    for (std::uint64_t q = edges[b]; q < edges[b + 1]; ++q) sum += term(q);
    out[b] = sum;
  }
  return out;
}

MonteCarloResult energy(const EnergyProblem& p, std::uint64_t samples, const CounterRng& rng) {
  const EnergySampler sampler(p);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double v = sampler.draw(rng, i);
    sum += v;
    sum_sq += v * v;
  }
  return finish(sum, sum_sq, samples);
}

MonteCarloResult coverage(const CoverSpec& cover, std::uint64_t samples, const CounterRng& rng) {
  const CoverIndex index(cover);
  double hits = 0.0;
  std::array<double, 3> x{};
  for (std::uint64_t i = 0; i < samples; ++i) {
    uniform_point(rng, i, cover.k, x.data());
    if (index.contains(x.data())) hits += 1.0;
  }
  return finish(hits, hits, samples);
}

double lower_order_min(const ApproxFunction& psi, const std::vector<std::uint64_t>& qs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t q : qs) {
    const double v = psi(q);
    if (v > 0.0) best = std::min(best, -std::log(v) / std::log(static_cast<double>(q)));
  }
  return best;
}

}  // namespace serial

// ----- OpenMP -----------------------------------------------------------------

namespace omp {

std::vector<double> block_sums(const TermFn& term, const std::vector<std::uint64_t>& edges) {
  std::vector<Task> tasks;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b)
    for (std::uint64_t lo = edges[b]; lo < edges[b + 1]; lo += kChunk)
      tasks.push_back({b, lo, std::min(edges[b + 1], lo + kChunk)});
  std::vector<double> partial(tasks.size(), 0.0);
  const auto n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::uint64_t q = tasks[i].lo; q < tasks[i].hi; ++q) sum += term(q);
    partial[i] = sum;
  }
  std::vector<double> out(edges.empty() ? 0 : edges.size() - 1, 0.0);
  for (std::size_t i = 0; i < tasks.size(); ++i) out[tasks[i].block] += partial[i];
  return out;
}

MonteCarloResult energy(const EnergyProblem& p, std::uint64_t samples, const CounterRng& rng) {
  const EnergySampler sampler(p);
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sum(chunks, 0.0);
  std::vector<double> sum_sq(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      const double v = sampler.draw(rng, i);
      sum[c] += v;
      sum_sq[c] += v * v;
    }
  }
  double s = 0.0;
  double s2 = 0.0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum_sq[c];
  }
  return finish(s, s2, samples);
}

MonteCarloResult coverage(const CoverSpec& cover, std::uint64_t samples, const CounterRng& rng) {
  const CoverIndex index(cover);
  std::uint64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::array<double, 3> x{};
    uniform_point(rng, i, cover.k, x.data());
    if (index.contains(x.data())) ++hits;
  }
  const auto h = static_cast<double>(hits);
  return finish(h, h, samples);
}

double lower_order_min(const ApproxFunction& psi, const std::vector<std::uint64_t>& qs) {
  double best = std::numeric_limits<double>::infinity();
  const auto n = static_cast<long>(qs.size());
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long i = 0; i < n; ++i) {
    const double v = psi(qs[i]);
    if (v > 0.0) best = std::min(best, -std::log(v) / std::log(static_cast<double>(qs[i])));
  }
  return best;
}

}  // namespace omp

}  // namespace limsup::kernels
