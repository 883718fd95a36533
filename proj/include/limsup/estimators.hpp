#pragma once

// Numerical verifiers: union measures, box counts, dimension fits, coverage,
// energies and lower-order diagnostics.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "limsup/core.hpp"
#include "limsup/cover.hpp"
#include "limsup/generators.hpp"
#include "limsup/series.hpp"

namespace limsup {

struct MeasureResult {
  double value = 0.0;
  double standard_error = 0.0;  // 0 when exact
  bool exact = true;
  bool operator==(const MeasureResult&) const = default;
};

inline constexpr std::uint64_t kDefaultMcSamples = 1 << 20;

// Exact for k = 1 (merged sweep, torus-aware), Monte Carlo otherwise.
MeasureResult union_measure(const CoverSpec& cover, std::uint64_t samples = kDefaultMcSamples,
                            std::uint64_t seed = 0);

// Exact measure of a union of open intervals (lo, hi) inside [0,1].
double interval_union_length(std::vector<std::pair<double, double>> intervals);

inline constexpr double kBoxCountWorkLimit = 1e9;

// Grid boxes [i delta, (i+1) delta)^k that meet the union; no rasterisation.
std::uint64_t box_count(const CoverSpec& cover, double delta);

struct ScalePoint {
  double delta = 0.0;
  double count = 0.0;
  bool operator==(const ScalePoint&) const = default;
};

struct DimensionEstimate {
  double value = 0.0;
  double half_width = 0.0;
  bool infinite_width = false;
  std::vector<ScalePoint> scales;
  double residual = 0.0;
  bool operator==(const DimensionEstimate&) const = default;
};

// Least-squares slope of log N against log 1/delta.
DimensionEstimate dim_fit(const std::vector<ScalePoint>& scales);

enum class FamilyKind { ApproxSet, Ifs };

struct NaturalCoverFamily {
  FamilyKind kind = FamilyKind::ApproxSet;
  ApproxSetRequest approx;     // q_min/q_max are set per level
  std::vector<double> ratios;  // Ifs
};

struct ScheduleLevel {
  std::uint64_t level = 0;  // Q for approximation sets, depth for IFS
  double delta = 0.0;       // 0 selects the finest element scale
};

// Approximation sets use the tail window q in (Q/2, Q] and delta = smallest half-width;
// IFS covers use delta = smallest interval length.
DimensionEstimate natural_cover_estimate(const NaturalCoverFamily& family,
                                         const std::vector<ScheduleLevel>& schedule);

// Measure of the union of elements M..N of a random cover on T^k.
MeasureResult tail_coverage(const RandomCoverSample& sample, std::uint64_t M, std::uint64_t N,
                            std::uint64_t mc_samples = kDefaultMcSamples);

enum class EnergyShape { Box, Ball };

struct EnergyDomain {
  int k = 1;
  EnergyShape shape = EnergyShape::Box;
  std::vector<double> center{0.5};
  std::vector<double> half_width{0.5};
  double radius = 0.0;
};

struct EnergyResult {
  double energy = 0.0;
  double standard_error = 0.0;
  bool divergent = false;
  double g = 0.0;  // |A|^2 / E
  double g_standard_error = 0.0;
  std::uint64_t samples = 0;
  bool operator==(const EnergyResult&) const = default;
};

EnergyDomain unit_interval();
EnergyDomain unit_ball(int k);

// Riesz s-energy (kernel |x-y|^-s) or f-energy (kernel 1/f(|x-y|)) by pair sampling.
EnergyResult energy(const EnergyDomain& domain, const std::variant<double, DimensionFunction>& kernel,
                    std::uint64_t samples, std::uint64_t seed);

struct ContentEnvelope {
  double lower = 0.0;  // |A| / sup_d (|A cap U| bound / f(d))
  double upper = 0.0;  // f(diam A)
  bool operator==(const ContentEnvelope&) const = default;
};

ContentEnvelope content_envelope(const std::vector<double>& half_widths, bool ball, const DimensionFunction& f);

struct ContentCriterion {
  SeriesVerdict verdict;
  double upper_sum = 0.0;  // over the elements evaluated
  double lower_sum = 0.0;
  std::uint64_t elements = 0;
  bool operator==(const ContentCriterion&) const = default;
};

// Finite list of boxes: the sum is finite, so the verdict is Converges.
ContentCriterion content_sum_criterion(const CoverSpec& elements, const DimensionFunction& f);
// Balls (or boxes with the given aspect) of radius r_i in R^k; verdict on sum f(diam A_i).
ContentCriterion content_sum_criterion(const RadiiRule& radii, int k, const DimensionFunction& f,
                                       bool ball = true, std::uint64_t envelope_terms = 1000);

struct LowerOrderResult {
  double lambda_full = 0.0;
  double lambda_dyadic = 0.0;
  std::optional<double> exact;
  std::uint64_t window_lo = 0;
  std::uint64_t window_hi = 0;
  std::uint64_t points = 0;
  bool operator==(const LowerOrderResult&) const = default;
};

inline constexpr std::uint64_t kLowerOrderPointCap = 1'000'000;

// Running minima of -log psi(q)/log q over q in [2^ceil(depth/2), 2^depth].
LowerOrderResult lower_order_diag(const ApproxFunction& psi, int depth);

}  // namespace limsup
