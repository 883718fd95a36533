#include "limsup/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "limsup/errors.hpp"
#include "limsup/fit.hpp"
#include "limsup/kernels.hpp"
#include "limsup/rng.hpp"

namespace limsup {

namespace {

MeasureResult mc_measure(const CoverSpec& cover, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("Monte Carlo needs at least one sample");
  const auto mc = kernels::omp::coverage(cover, samples, CounterRng(seed));
  return {mc.mean, mc.standard_error, false};
}

}  // namespace

double interval_union_length(std::vector<std::pair<double, double>> intervals) {
  for (auto& [lo, hi] : intervals) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
  }
  std::erase_if(intervals, [](const auto& iv) { return !(iv.second > iv.first); });
  if (intervals.empty()) return 0.0;
  std::sort(intervals.begin(), intervals.end());
  double total = 0.0;
  double lo = intervals[0].first;
  double hi = intervals[0].second;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].first <= hi) {
      hi = std::max(hi, intervals[i].second);
    } else {
      total += hi - lo;
      lo = intervals[i].first;
      hi = intervals[i].second;
    }
  }
  return total + (hi - lo);
}

MeasureResult union_measure(const CoverSpec& cover, std::uint64_t samples, std::uint64_t seed) {
  if (cover.empty()) return {};
  if (cover.k != 1) return mc_measure(cover, samples, seed);
  std::vector<std::pair<double, double>> ivs;
  ivs.reserve(cover.size() + 8);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    double lo;
    double hi;
    if (cover.geometry == Geometry::Slabs) {
      const double a = (cover.offsets[i] - cover.thickness[i]) / cover.normals[i];
      const double b = (cover.offsets[i] + cover.thickness[i]) / cover.normals[i];
      lo = std::min(a, b);
      hi = std::max(a, b);
    } else {
      lo = cover.centers[i] - cover.half_widths[i];
      hi = cover.centers[i] + cover.half_widths[i];
    }
    if (cover.torus) {
      if (hi - lo >= 1.0) return {1.0, 0.0, true};
      if (lo < 0.0) ivs.emplace_back(lo + 1.0, 1.0);
      if (hi > 1.0) ivs.emplace_back(0.0, hi - 1.0);
    }
    ivs.emplace_back(lo, hi);
  }
  return {interval_union_length(std::move(ivs)), 0.0, true};
}

DimensionEstimate dim_fit(const std::vector<ScalePoint>& scales) {
  if (scales.size() < 4) throw DomainError("dimension fit needs at least 4 scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i].delta > 0.0) || !(scales[i].count >= 1.0)) throw DomainError("scales need delta > 0 and N >= 1");
    if (i > 0 && !(scales[i].delta < scales[i - 1].delta))
      throw DomainError("scales must be strictly decreasing in delta");
    if (i > 0 && scales[i].count < scales[i - 1].count)
      throw DomainError("counts must be non-decreasing as delta decreases");
  }
  DimensionEstimate est;
  est.scales = scales;
  if (scales.front().count == scales.back().count) {
    est.infinite_width = true;
    est.half_width = std::numeric_limits<double>::infinity();
    return est;
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : scales) {
    x.push_back(-std::log(s.delta));
    y.push_back(std::log(s.count));
  }
  const LineFit fit = fit_line(x, y);
  est.value = fit.slope;
  est.half_width = fit.slope_half_width;
  est.residual = fit.residual;
  return est;
}

DimensionEstimate natural_cover_estimate(const NaturalCoverFamily& family, const std::vector<ScheduleLevel>& schedule) {
  std::vector<ScalePoint> points;
  points.reserve(schedule.size());
  for (const auto& level : schedule) {
    CoverSpec cover;
    if (family.kind == FamilyKind::Ifs) {
      cover = ifs_cover(family.ratios, static_cast<int>(level.level));
    } else {
      if (level.level < 2) throw DomainError("approximation-set levels need Q >= 2");
      ApproxSetRequest req = family.approx;
      req.q_min = level.level / 2 + 1;
      req.q_max = level.level;
      cover = approx_set_union(req);
    }
    double delta = level.delta;
    if (delta <= 0.0) {
      delta = std::numeric_limits<double>::infinity();
      if (cover.geometry == Geometry::Slabs) {
        for (std::size_t i = 0; i < cover.size(); ++i) {
          double norm = 0.0;
          for (double v : cover.normal(i)) norm = std::max(norm, std::abs(v));
          delta = std::min(delta, cover.thickness[i] / norm);
        }
      } else {
        const double scale = family.kind == FamilyKind::Ifs ? 2.0 : 1.0;
        for (double h : cover.half_widths) delta = std::min(delta, scale * h);
      }
      if (!std::isfinite(delta)) throw DomainError("level produced an empty cover");
      delta = std::min(delta, 1.0);
    }
    points.push_back({delta, static_cast<double>(box_count(cover, delta))});
  }
  std::sort(points.begin(), points.end(), [](const ScalePoint& a, const ScalePoint& b) { return a.delta > b.delta; });
  return dim_fit(points);
}

MeasureResult tail_coverage(const RandomCoverSample& sample, std::uint64_t M, std::uint64_t N,
                            std::uint64_t mc_samples) {
  if (M < 1 || M > N || N > sample.n) throw DomainError("tail coverage needs 1 <= M <= N <= sample size");
  const CoverSpec cover = random_cover_window(sample, M, N);
  return union_measure(cover, mc_samples, sample.seed);
}

EnergyDomain unit_interval() { return EnergyDomain{}; }

EnergyDomain unit_ball(int k) {
  if (k < 1 || k > 3) throw DomainError("energy domains support k = 1..3");
  EnergyDomain d;
  d.k = k;
  d.shape = EnergyShape::Ball;
  d.center.assign(static_cast<std::size_t>(k), 0.0);
  d.half_width.clear();
  d.radius = 1.0;
  return d;
}

EnergyResult energy(const EnergyDomain& domain, const std::variant<double, DimensionFunction>& kernel,
                    std::uint64_t samples, std::uint64_t seed) {
  if (samples < 10'000) throw DomainError("energy estimation needs at least 1e4 samples");
  if (domain.k < 1 || domain.k > 3) throw DomainError("energy domains support k = 1..3");
  kernels::EnergyProblem p;
  p.k = domain.k;
  p.shape = domain.shape == EnergyShape::Ball ? kernels::EnergyShape::Ball : kernels::EnergyShape::Box;
  p.center = domain.center;
  p.half_width = domain.half_width;
  p.radius = domain.radius;
  if (p.center.size() != static_cast<std::size_t>(p.k) ||
      (p.shape == kernels::EnergyShape::Box && p.half_width.size() != static_cast<std::size_t>(p.k)))
    throw DomainError("energy domain dimensions do not match k");

  const double k = domain.k;
  if (const double* s = std::get_if<double>(&kernel)) {
    p.s = *s;
    if (p.s >= k) {
      EnergyResult r;
      r.energy = std::numeric_limits<double>::infinity();
      r.divergent = true;
      return r;
    }
  } else {
    const auto& f = std::get<DimensionFunction>(kernel);
    const PowerLog* pl = f.power_log_form();
    if (!pl) throw UnsupportedError("f-energy needs a symbolic r^s (log 1/r)^b dimension function");
    if (pl->s > k || (pl->s == k && pl->b <= 1.0)) {
      EnergyResult r;
      r.energy = std::numeric_limits<double>::infinity();
      r.divergent = true;
      return r;
    }
    if (pl->s == k) throw UnsupportedError("f-energy at s = k is finite but not reachable by pair sampling");
    p.s = pl->s;
    if (pl->b != 0.0) {
      const double b = pl->b;
      p.weight = [b](double rho) { return std::pow(std::max(std::log(1.0 / rho), 1.0), -b); };
    }
  }
  const auto mc = kernels::omp::energy(p, samples, CounterRng(seed));
  const double vol = kernels::energy_volume(p);
  EnergyResult r;
  r.energy = mc.mean;
  r.standard_error = mc.standard_error;
  r.samples = mc.samples;
  if (mc.mean > 0.0) {
    r.g = vol * vol / mc.mean;
    r.g_standard_error = r.g * mc.standard_error / mc.mean;
  }
  return r;
}

ContentEnvelope content_envelope(const std::vector<double>& half_widths, bool ball, const DimensionFunction& f) {
  if (half_widths.empty() || half_widths.size() > 3) throw DomainError("content envelope supports k = 1..3");
  const int k = static_cast<int>(half_widths.size());
  for (double h : half_widths)
    if (!(h > 0.0)) throw DomainError("element extents must be positive");
  const double unit_ball[] = {2.0, std::numbers::pi, 4.0 * std::numbers::pi / 3.0};
  double volume = 1.0;
  double diam = 0.0;
  if (ball) {
    volume = unit_ball[k - 1] * std::pow(half_widths[0], k);
    diam = 2.0 * half_widths[0];
  } else {
    double d2 = 0.0;
    for (double h : half_widths) {
      volume *= 2.0 * h;
      d2 += 4.0 * h * h;
    }
    diam = std::sqrt(d2);
  }
  ContentEnvelope env;
  env.upper = f(diam);
  // Mass distribution on A: a set U of diameter d has |A cap U| at most the smaller of
  // |A|, the isodiametric bound and (for boxes) the clipped cube of side d.
  double worst = 0.0;
  for (int j = 0; j <= 60; ++j) {
    const double d = diam * std::ldexp(1.0, -j);
    const double fd = f(d);
    if (!(fd > 0.0)) break;
    double bound = std::min(volume, unit_ball[k - 1] * std::pow(0.5 * d, k));
    if (!ball) {
      double cube = 1.0;
      for (double h : half_widths) cube *= std::min(2.0 * h, d);
      bound = std::min(bound, cube);
    }
    worst = std::max(worst, bound / fd);
  }
  env.lower = worst > 0.0 ? volume / worst : 0.0;
  return env;
}

ContentCriterion content_sum_criterion(const CoverSpec& elements, const DimensionFunction& f) {
  if (elements.geometry == Geometry::Slabs) throw UnsupportedError("content criterion needs box or ball elements");
  ContentCriterion out;
  out.verdict.cls = SeriesClass::Converges;
  out.verdict.method = SeriesMethod::ExactExponent;
  std::vector<double> h(static_cast<std::size_t>(elements.k));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto hw = elements.half_width(i);
    std::copy(hw.begin(), hw.end(), h.begin());
    const auto env = content_envelope(h, false, f);
    out.upper_sum += env.upper;
    out.lower_sum += env.lower;
  }
  out.elements = elements.size();
  return out;
}

ContentCriterion content_sum_criterion(const RadiiRule& radii, int k, const DimensionFunction& f, bool ball,
                                       std::uint64_t envelope_terms) {
  if (k < 1 || k > 3) throw DomainError("content criterion supports k = 1..3");
  const double diam_scale = ball ? 2.0 : 2.0 * std::sqrt(static_cast<double>(k));
  ContentCriterion out;
  const std::uint64_t terms = std::min(envelope_terms, radii.max_index());
  for (std::uint64_t i = 1; i <= terms; ++i) {
    const auto env = content_envelope(std::vector<double>(static_cast<std::size_t>(k), radii(i)), ball, f);
    out.upper_sum += env.upper;
    out.lower_sum += env.lower;
  }
  out.elements = terms;

  SeriesSpec spec;
  spec.request.kind = SeriesKind::PowerRadii;
  spec.request.radii = radii;
  spec.request.f = f;
  spec.request.k = k;
  spec.max_index = radii.max_index();
  spec.term = [radii, f, diam_scale](std::uint64_t i) -> double {
    if (i == 0) return 0.0;
    try {
      return f(diam_scale * radii(i));
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const PowerLog* pl = f.power_log_form();
  if (pl) {
    if (const auto* pd = std::get_if<PowerDecay>(&radii.form())) {
      spec.components.push_back({IndexFamily::all_naturals(), false, -pd->p * pl->s, pl->b});
    } else if (const auto* gd = std::get_if<GeometricDecay>(&radii.form())) {
      spec.components.push_back(
          {IndexFamily::geometric(2), false, pl->s * std::log(gd->ratio) / std::numbers::ln2, pl->b});
    }
  }
  out.verdict = classify(spec);
  return out;
}

LowerOrderResult lower_order_diag(const ApproxFunction& psi, int depth) {
  if (depth < 10 || depth > 62) throw DomainError("lower-order depth must lie in 10..62");
  LowerOrderResult out;
  out.window_lo = std::uint64_t{1} << ((depth + 1) / 2);
  out.window_hi = std::min(std::uint64_t{1} << depth, psi.max_index());
  if (out.window_hi < out.window_lo) throw DomainError("sampled psi does not reach the diagnostic window");

  std::vector<std::uint64_t> dyadic;
  for (int t = (depth + 1) / 2; t <= depth; ++t) {
    const std::uint64_t q = std::uint64_t{1} << t;
    if (q <= out.window_hi) dyadic.push_back(q);
  }

  std::vector<std::uint64_t> qs = dyadic;
  const CounterRng rng(static_cast<std::uint64_t>(depth));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;
  for (std::uint64_t lo = out.window_lo; lo <= out.window_hi; lo *= 2)
    blocks.emplace_back(lo, std::min(2 * lo - 1, out.window_hi));
  const std::uint64_t budget = kLowerOrderPointCap / blocks.size();
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto [lo, hi] = blocks[bi];
    const std::uint64_t size = hi - lo + 1;
    if (size <= budget) {
      for (std::uint64_t q = lo; q <= hi; ++q) qs.push_back(q);
      continue;
    }
    // One uniformly placed point per stratum.
    const double width = static_cast<double>(size) / static_cast<double>(budget);
    for (std::uint64_t j = 0; j < budget; ++j) {
      const double u = rng.split(bi).uniform(j);
      auto q = lo + static_cast<std::uint64_t>((static_cast<double>(j) + u) * width);
      qs.push_back(std::min(q, hi));
    }
  }
  if (const auto* pw = std::get_if<PiecewisePower>(&psi.form())) {
    for (std::uint64_t q : pw->on_set.enumerate(out.window_hi))
      if (q >= out.window_lo) qs.push_back(q);
  }
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  out.points = qs.size();
  out.lambda_full = kernels::omp::lower_order_min(psi, qs);
  out.lambda_dyadic = kernels::omp::lower_order_min(psi, dyadic);

  if (const auto* p = std::get_if<PowerApprox>(&psi.form())) {
    out.exact = p->tau;
  } else if (const auto* pw = std::get_if<PiecewisePower>(&psi.form())) {
    if (pw->on_set.is_finite())
      out.exact = pw->beta;
    else if (pw->on_set.is_cofinite())
      out.exact = pw->alpha;
    else
      out.exact = std::min(pw->alpha, pw->beta);
  }
  return out;
}

}  // namespace limsup
