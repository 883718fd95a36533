#pragma once

// Dichotomy series: construction of the term rule for each setting and
// convergence classification (exact for symbolic inputs, numeric otherwise).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limsup/core.hpp"

namespace limsup {

enum class SeriesKind {
  KhintchineSim,    // sum psi(q)^k
  Jarnik,           // sum q^k f(psi(q)/q)
  KG,               // sum q^{n-1} psi(q)^m
  KGHausdorff,      // sum q^{n+m-1} g(psi(q)/q), g = r^{-m(n-1)} f
  DuffinSchaeffer,  // sum phi(q)^k f(psi(q)/q)
  CantorLSV,        // sum_{q in base} f(psi(q)) q^{log 2/log 3}
  PowerRadii,       // sum r_i^s
  SVFSum,           // sum Phi^t(T_i), sigma_j(T_i) = sigma[j](i)
  PowerLogTerm,     // sum_{q in base} q^E (log q)^B
};

std::string to_string(SeriesKind kind);
SeriesKind series_kind_from_string(const std::string& name);

struct SeriesRequest {
  SeriesKind kind = SeriesKind::KhintchineSim;
  int k = 1;
  int n = 1;
  int m = 1;
  std::optional<ApproxFunction> psi;
  std::optional<DimensionFunction> f;
  IndexFamily base;  // CantorLSV and PowerLogTerm support; defaults to all naturals
  std::optional<RadiiRule> radii;
  std::vector<RadiiRule> sigma;
  double s = 1.0;  // PowerRadii exponent
  double t = 1.0;  // SVFSum exponent
  double term_exponent = 0.0;
  double term_log_exponent = 0.0;
};

// term(q) = q^E (log q)^B Theta(1) summed over `family` (or over its complement).
struct SeriesComponent {
  IndexFamily family;
  bool complement = false;
  double exponent = 0.0;
  double log_exponent = 0.0;
  bool operator==(const SeriesComponent&) const = default;
};

struct SeriesSpec {
  SeriesRequest request;
  IndexFamily support;                     // indices the sum runs over
  std::vector<SeriesComponent> components;  // empty when no exact form exists
  std::function<double(std::uint64_t)> term;  // 0 off the support, NaN where undefined
  std::uint64_t max_index = UINT64_MAX;       // sampled inputs bound the range

  bool is_symbolic() const noexcept { return !components.empty(); }
};

// Throws HypothesisError when the KGHausdorff transform g is invalid, DomainError
// for inconsistent parameters.
SeriesSpec build_series(const SeriesRequest& request);

enum class SeriesClass { Converges, Diverges, Inconclusive };
enum class SeriesMethod { ExactExponent, IntegralTestLog, NumericDiagnostic };

std::string to_string(SeriesClass c);
std::string to_string(SeriesMethod m);
SeriesClass series_class_from_string(const std::string& name);
SeriesMethod series_method_from_string(const std::string& name);

struct PartialSumRow {
  std::uint64_t cutoff = 0;
  double sum = 0.0;
  bool operator==(const PartialSumRow&) const = default;
};

struct SeriesDiagnostics {
  std::vector<PartialSumRow> partial_sums;  // cutoffs 2^j and the final N
  double tail_slope = 0.0;       // slope of log(S_2N - S_N) against log N
  double fitted_exponent = 0.0;  // term exponent E from dyadic block sums
  std::uint64_t n_max = 0;
  bool saturated = false;
  bool operator==(const SeriesDiagnostics&) const = default;
};

struct SeriesVerdict {
  SeriesClass cls = SeriesClass::Inconclusive;
  SeriesMethod method = SeriesMethod::NumericDiagnostic;
  std::optional<double> exponent;
  std::optional<double> log_exponent;
  std::optional<SeriesDiagnostics> diagnostics;
  bool operator==(const SeriesVerdict&) const = default;
};

inline constexpr std::uint64_t kNumericSeriesCutoff = 1'000'000;
inline constexpr double kInconclusiveBand = 0.05;

SeriesVerdict classify(const SeriesSpec& series);
// Always runs the numeric diagnostic, also for symbolic series.
SeriesVerdict classify_numeric(const SeriesSpec& series, std::uint64_t n = kNumericSeriesCutoff);

// Exact verdict for one component.
SeriesClass classify_component(const SeriesComponent& c, SeriesMethod* method = nullptr);

SeriesDiagnostics partial_sum_diagnostics(const SeriesSpec& series, std::uint64_t n);

struct ConvergenceExponent {
  double value = 0.0;
  bool exact = true;
  double half_width = 0.0;  // fit half-width for sampled input
  bool operator==(const ConvergenceExponent&) const = default;
};

// nu(Q) = inf{nu : sum_{q in Q} q^-nu < inf}.
ConvergenceExponent exponent_of_convergence(const IndexFamily& family);
// s_0 = inf{s : sum r_i^s < inf}.
ConvergenceExponent exponent_of_convergence(const RadiiRule& radii);

}  // namespace limsup
