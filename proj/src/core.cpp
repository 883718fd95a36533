#include "limsup/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "limsup/errors.hpp"

namespace limsup {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Exponents within this distance of an integer are treated as that integer, so that
// exponents computed as e.g. 3.999999999999993 enumerate {k^4} exactly.
constexpr double kIntegerSnap = 1e-9;

bool near_integer(double x) { return std::abs(x - std::round(x)) < kIntegerSnap; }

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > kSaturated / base) return kSaturated;
    result *= base;
  }
  return result;
}

// Non-decreasing values with at least a decade of decay towards the small end.
bool table_decays(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) return false;
  return values.front() <= values.back() / 10.0;
}

}  // namespace

// ----- IndexFamily --------------------------------------------------------

IndexFamily IndexFamily::geometric(std::uint64_t base) {
  if (base < 2) throw DomainError("geometric index family needs base >= 2");
  return IndexFamily(GeometricPowers{base});
}

IndexFamily IndexFamily::polynomial_ceil(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw DomainError("polynomial index family needs exponent > 0");
  if (near_integer(exponent)) exponent = std::round(exponent);
  return IndexFamily(PolynomialCeil{exponent});
}

IndexFamily IndexFamily::explicit_finite(std::vector<std::uint64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.front() == 0)
    throw DomainError("index family members must be natural numbers >= 1");
  return IndexFamily(ExplicitFinite{std::move(members)});
}

std::uint64_t polynomial_ceil_member(double exponent, std::uint64_t k) {
  if (near_integer(exponent))
    return saturating_pow(k, static_cast<std::uint64_t>(std::llround(exponent)));
  const double v = std::pow(static_cast<double>(k), exponent);
  if (v >= 1.8e19) return kSaturated;
  // Values within rounding noise of an integer are that integer.
  const double snapped = std::round(v);
  if (std::abs(v - snapped) <= 1e-9 * std::max(1.0, v)) return static_cast<std::uint64_t>(snapped);
  return static_cast<std::uint64_t>(std::ceil(v));
}

bool IndexFamily::is_cofinite() const noexcept {
  if (std::holds_alternative<AllNaturals>(form_)) return true;
  if (const auto* poly = std::get_if<PolynomialCeil>(&form_)) return poly->exponent <= 1.0;
  return false;
}

bool IndexFamily::contains(std::uint64_t q) const {
  if (q == 0) return false;
  return std::visit(
      [q](const auto& form) -> bool {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, AllNaturals>) {
          return true;
        } else if constexpr (std::is_same_v<T, GeometricPowers>) {
          std::uint64_t x = q;
          while (x % form.base == 0) x /= form.base;
          return x == 1;
        } else if constexpr (std::is_same_v<T, PolynomialCeil>) {
          if (form.exponent <= 1.0) return true;
          const auto guess = static_cast<std::uint64_t>(
              std::floor(std::pow(static_cast<double>(q), 1.0 / form.exponent)));
          const std::uint64_t lo = guess > 2 ? guess - 2 : 1;
          for (std::uint64_t k = lo; k <= guess + 2; ++k) {
            const std::uint64_t member = polynomial_ceil_member(form.exponent, k);
            if (member == q) return true;
            if (member > q) break;
          }
          return false;
        } else {
          return std::binary_search(form.members.begin(), form.members.end(), q);
        }
      },
      form_);
}

std::vector<std::uint64_t> IndexFamily::enumerate(std::uint64_t bound) const {
  std::vector<std::uint64_t> out;
  std::visit(
      [&](const auto& form) {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, AllNaturals>) {
          out.resize(bound);
          std::iota(out.begin(), out.end(), std::uint64_t{1});
        } else if constexpr (std::is_same_v<T, GeometricPowers>) {
          for (std::uint64_t x = 1; x <= bound;) {
            out.push_back(x);
            if (x > bound / form.base) break;
            x *= form.base;
          }
        } else if constexpr (std::is_same_v<T, PolynomialCeil>) {
          for (std::uint64_t k = 1;; ++k) {
            const std::uint64_t member = polynomial_ceil_member(form.exponent, k);
            if (member > bound) break;
            if (out.empty() || member > out.back()) out.push_back(member);
            if (member == kSaturated) break;
          }
        } else {
          for (std::uint64_t m : form.members) {
            if (m > bound) break;
            out.push_back(m);
          }
        }
      },
      form_);
  return out;
}

// ----- DimensionFunction --------------------------------------------------

DimensionFunction DimensionFunction::power_log(double s, double b) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("power-log dimension function needs s > 0");
  if (!std::isfinite(b)) throw DomainError("power-log log-exponent must be finite");
  return DimensionFunction(PowerLog{s, b});
}

DimensionFunction DimensionFunction::sampled(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw DomainError("sampled dimension function needs at least 2 points");
  std::sort(table.begin(), table.end());
  SampledDimension out;
  for (const auto& [r, v] : table) {
    if (!(r > 0.0)) throw DomainError("sampled dimension function needs r > 0");
    if (!(v >= 0.0)) throw DomainError("sampled dimension function values must be non-negative");
    if (!out.r.empty() && r == out.r.back()) throw DomainError("duplicate r in sampled table");
    out.r.push_back(r);
    out.value.push_back(v);
  }
  if (!table_decays(out.value))
    throw DomainError("sampled dimension function must be non-decreasing in r and decay towards 0");
  return DimensionFunction(std::move(out));
}

double DimensionFunction::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("dimension function evaluated at r <= 0");
  if (const auto* pl = std::get_if<PowerLog>(&form_)) {
    double value = std::pow(r, pl->s);
    if (pl->b != 0.0) {
      const double log_factor = r < std::exp(-1.0) ? std::log(1.0 / r) : 1.0;
      value *= std::pow(log_factor, pl->b);
    }
    return value;
  }
  const auto& table = std::get<SampledDimension>(form_);
  if (r < table.r.front() || r > table.r.back())
    throw RangeError("r outside sampled dimension-function table");
  const auto it = std::lower_bound(table.r.begin(), table.r.end(), r);
  const auto i = static_cast<std::size_t>(it - table.r.begin());
  if (table.r[i] == r) return table.value[i];
  const double t = (r - table.r[i - 1]) / (table.r[i] - table.r[i - 1]);
  return table.value[i - 1] + t * (table.value[i] - table.value[i - 1]);
}

double eval_dimension_function(const DimensionFunction& f, double r) { return f(r); }

// ----- ApproxFunction ------------------------------------------------------

ApproxFunction ApproxFunction::power(double tau) {
  if (!std::isfinite(tau)) throw DomainError("power approximating function needs finite tau");
  return ApproxFunction(PowerApprox{tau},
                        tau >= 0.0 ? Monotonicity::NonIncreasing : Monotonicity::NonMonotone);
}

ApproxFunction ApproxFunction::piecewise(double alpha, double beta, IndexFamily on_set) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw DomainError("piecewise approximating function needs finite exponents");
  Monotonicity flag = Monotonicity::NonMonotone;
  const bool empty_set = on_set.is_finite() && on_set.enumerate(kSaturated).empty();
  if (alpha == beta || on_set.is_cofinite()) {
    flag = alpha >= 0.0 ? Monotonicity::NonIncreasing : Monotonicity::NonMonotone;
  } else if (empty_set) {
    flag = beta >= 0.0 ? Monotonicity::NonIncreasing : Monotonicity::NonMonotone;
  }
  return ApproxFunction(PiecewisePower{alpha, beta, std::move(on_set)}, flag);
}

ApproxFunction ApproxFunction::sampled(std::vector<std::pair<std::uint64_t, double>> table) {
  if (table.empty()) throw DomainError("sampled approximating function needs a non-empty table");
  std::sort(table.begin(), table.end());
  SampledApprox out;
  bool non_increasing = true;
  for (const auto& [q, v] : table) {
    if (q == 0) throw DomainError("sampled approximating function indices start at 1");
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DomainError("sampled approximating function values must be finite and >= 0");
    if (!out.q.empty()) {
      if (q == out.q.back()) throw DomainError("duplicate q in sampled table");
      if (v > out.value.back()) non_increasing = false;
    }
    out.q.push_back(q);
    out.value.push_back(v);
  }
  return ApproxFunction(std::move(out),
                        non_increasing ? Monotonicity::NonIncreasing : Monotonicity::NonMonotone);
}

ApproxFunction ApproxFunction::sampled_dense(std::vector<double> values) {
  if (values.empty()) throw DomainError("sampled approximating function needs a non-empty table");
  bool non_increasing = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw DomainError("sampled approximating function values must be finite and >= 0");
    if (i > 0 && values[i] > values[i - 1]) non_increasing = false;
  }
  SampledApprox out;
  out.q.resize(values.size());
  std::iota(out.q.begin(), out.q.end(), std::uint64_t{1});
  out.value = std::move(values);
  return ApproxFunction(std::move(out),
                        non_increasing ? Monotonicity::NonIncreasing : Monotonicity::NonMonotone);
}

ApproxFunction ApproxFunction::with_monotonicity(Monotonicity flag) const {
  ApproxFunction copy = *this;
  copy.monotone_ = flag;
  return copy;
}

double ApproxFunction::operator()(std::uint64_t q) const {
  if (q == 0) throw DomainError("approximating function evaluated at q = 0");
  const double x = static_cast<double>(q);
  return std::visit(
      [&](const auto& form) -> double {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, PowerApprox>) {
          return std::pow(x, -form.tau);
        } else if constexpr (std::is_same_v<T, PiecewisePower>) {
          return std::pow(x, form.on_set.contains(q) ? -form.alpha : -form.beta);
        } else {
          // Dense tables (q = 1..n) index directly.
          if (q <= form.q.size() && form.q[q - 1] == q) return form.value[q - 1];
          const auto it = std::lower_bound(form.q.begin(), form.q.end(), q);
          if (it == form.q.end() || *it != q) throw RangeError("q missing from sampled table");
          return form.value[static_cast<std::size_t>(it - form.q.begin())];
        }
      },
      form_);
}

std::uint64_t ApproxFunction::max_index() const noexcept {
  if (const auto* s = std::get_if<SampledApprox>(&form_)) return s->q.back();
  return kSaturated;
}

double eval_approx_function(const ApproxFunction& psi, std::uint64_t q) { return psi(q); }

// ----- RadiiRule ------------------------------------------------------------

RadiiRule RadiiRule::power(double p, double coeff) {
  if (!(p > 0.0) || !(coeff > 0.0)) throw DomainError("power radii rule needs p > 0 and c > 0");
  return RadiiRule(PowerDecay{coeff, p});
}

RadiiRule RadiiRule::geometric(double ratio, double coeff) {
  if (!(ratio > 0.0 && ratio < 1.0) || !(coeff > 0.0))
    throw DomainError("geometric radii rule needs ratio in (0,1) and c > 0");
  return RadiiRule(GeometricDecay{coeff, ratio});
}

RadiiRule RadiiRule::sampled(std::vector<double> values) {
  if (values.empty()) throw DomainError("sampled radii rule needs values");
  for (double v : values)
    if (!(v > 0.0)) throw DomainError("radii must be positive");
  return RadiiRule(SampledSequence{std::move(values)});
}

double RadiiRule::operator()(std::uint64_t i) const {
  if (i == 0) throw DomainError("radii rules are indexed from 1");
  const double x = static_cast<double>(i);
  return std::visit(
      [&](const auto& form) -> double {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, PowerDecay>) {
          return form.coeff * std::pow(x, -form.p);
        } else if constexpr (std::is_same_v<T, GeometricDecay>) {
          return form.coeff * std::pow(form.ratio, x);
        } else {
          if (i > form.values.size()) throw RangeError("index beyond sampled radii");
          return form.values[i - 1];
        }
      },
      form_);
}

std::uint64_t RadiiRule::max_index() const noexcept {
  if (const auto* s = std::get_if<SampledSequence>(&form_)) return s->values.size();
  return kSaturated;
}

// ----- hypotheses -------------------------------------------------------------

namespace {

// Direction of r^e (log 1/r)^b as r -> 0.
Direction power_log_direction(double e, double b) {
  if (e > 0.0) return Direction::Increasing;
  if (e < 0.0) return Direction::Decreasing;
  if (b > 0.0) return Direction::Decreasing;
  if (b < 0.0) return Direction::Increasing;
  return Direction::Constant;
}

// 64 points r_max 2^{-j} inside the table, or log-spaced across it when the table
// spans fewer than 64 octaves.
std::vector<double> diagnostic_grid(const SampledDimension& table) {
  const double lo = table.r.front();
  const double hi = table.r.back();
  std::vector<double> grid;
  if (hi / lo >= std::ldexp(1.0, 63)) {
    for (int j = 0; j < 64; ++j) grid.push_back(std::ldexp(hi, -j));
  } else {
    const double span = std::log(hi / lo);
    for (int j = 0; j < 64; ++j) grid.push_back(hi * std::exp(-span * j / 63.0));
    grid.back() = lo;
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

}  // namespace

std::pair<bool, Direction> scaled_monotonicity(const DimensionFunction& f, double exponent) {
  if (const auto* pl = f.power_log_form()) {
    // Every r^e (log 1/r)^b is eventually monotone; the direction is what varies.
    return {true, power_log_direction(pl->s - exponent, pl->b)};
  }
  const auto& table = std::get<SampledDimension>(f.form());
  const auto grid = diagnostic_grid(table);
  bool up = false;
  bool down = false;
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double h = std::pow(grid[i], -exponent) * f(grid[i]);
    if (i > 0) {
      const double tol = 1e-12 * std::max(std::abs(h), std::abs(prev));
      if (h > prev + tol) up = true;
      if (h < prev - tol) down = true;
    }
    prev = h;
  }
  if (up && down) return {false, Direction::None};
  if (up) return {true, Direction::Increasing};
  if (down) return {true, Direction::Decreasing};
  return {true, Direction::Constant};
}

DimensionFunction scaled_dimension_function(const DimensionFunction& f, double l) {
  if (const auto* pl = f.power_log_form()) return DimensionFunction(PowerLog{pl->s - l, pl->b});
  SampledDimension table = std::get<SampledDimension>(f.form());
  for (std::size_t i = 0; i < table.r.size(); ++i) table.value[i] *= std::pow(table.r[i], -l);
  return DimensionFunction(std::move(table));
}

HypothesisReport validate_hypotheses(const DimensionFunction& f, int k, int l) {
  HypothesisReport report;
  report.k = k;
  report.l = l;
  const auto [monotone, direction] = scaled_monotonicity(f, static_cast<double>(k));
  report.scaled_monotone = monotone;
  report.scaled_direction = direction;

  if (const auto* pl = f.power_log_form()) {
    const double e = pl->s - l;
    report.g_valid = e > 0.0 || (e == 0.0 && pl->b < 0.0);
    if (!report.g_valid)
      report.g_reason = "g(r) = r^-" + std::to_string(l) + " f(r) does not tend to 0 as r -> 0";
    report.doubling = true;
    report.exact = true;
    return report;
  }

  report.exact = false;
  const auto& table = std::get<SampledDimension>(f.form());
  std::vector<double> g_values(table.r.size());
  for (std::size_t i = 0; i < table.r.size(); ++i)
    g_values[i] = std::pow(table.r[i], -static_cast<double>(l)) * table.value[i];
  report.g_valid = table_decays(g_values);
  if (!report.g_valid)
    report.g_reason = "g(r) = r^-" + std::to_string(l) +
                      " f(r) is not non-decreasing with decay on the sampled table";
  report.doubling = true;
  for (double r : diagnostic_grid(table)) {
    if (2.0 * r > table.r.back()) break;
    if (!(f(r) > 0.0)) {
      report.doubling = false;
      break;
    }
  }
  return report;
}

}  // namespace limsup
