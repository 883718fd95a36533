#pragma once

// Function families shared by every pipeline: index sets, dimension functions,
// approximating functions, and decreasing radius sequences.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace limsup {

// ---------------------------------------------------------------------------
// Index families Q ⊆ N
// ---------------------------------------------------------------------------

struct AllNaturals {
  bool operator==(const AllNaturals&) const = default;
};
// {base^n : n >= 0}
struct GeometricPowers {
  std::uint64_t base = 2;
  bool operator==(const GeometricPowers&) const = default;
};
// {ceil(k^exponent) : k in N}, duplicates removed.
struct PolynomialCeil {
  double exponent = 1.0;
  bool operator==(const PolynomialCeil&) const = default;
};
struct ExplicitFinite {
  std::vector<std::uint64_t> members;  // strictly increasing
  bool operator==(const ExplicitFinite&) const = default;
};

class IndexFamily {
 public:
  using Form = std::variant<AllNaturals, GeometricPowers, PolynomialCeil, ExplicitFinite>;

  IndexFamily() = default;
  static IndexFamily all_naturals() { return IndexFamily(AllNaturals{}); }
  static IndexFamily geometric(std::uint64_t base);
  static IndexFamily polynomial_ceil(double exponent);
  static IndexFamily explicit_finite(std::vector<std::uint64_t> members);

  const Form& form() const noexcept { return form_; }

  bool contains(std::uint64_t q) const;
  // Members <= bound, strictly increasing.
  std::vector<std::uint64_t> enumerate(std::uint64_t bound) const;

  bool is_finite() const noexcept { return std::holds_alternative<ExplicitFinite>(form_); }
  // True when the family contains every sufficiently large natural number.
  bool is_cofinite() const noexcept;

  bool operator==(const IndexFamily&) const = default;

 private:
  explicit IndexFamily(Form form) : form_(std::move(form)) {}
  Form form_{AllNaturals{}};
};

// k-th member ceil(k^p) of a PolynomialCeil family; saturates at UINT64_MAX.
std::uint64_t polynomial_ceil_member(double exponent, std::uint64_t k);

// ---------------------------------------------------------------------------
// Dimension functions f: r^s (log 1/r)^b, or a sampled table
// ---------------------------------------------------------------------------

struct PowerLog {
  double s = 1.0;
  double b = 0.0;
  bool operator==(const PowerLog&) const = default;
};

struct SampledDimension {
  std::vector<double> r;      // strictly increasing
  std::vector<double> value;  // non-negative, non-decreasing
  bool operator==(const SampledDimension&) const = default;
};

class DimensionFunction {
 public:
  using Form = std::variant<PowerLog, SampledDimension>;

  static DimensionFunction power_log(double s, double b = 0.0);
  static DimensionFunction power(double s) { return power_log(s, 0.0); }
  // Pairs (r, f(r)) in any order; validated for monotonicity and decay.
  static DimensionFunction sampled(std::vector<std::pair<double, double>> table);

  const Form& form() const noexcept { return form_; }
  bool is_symbolic() const noexcept { return std::holds_alternative<PowerLog>(form_); }
  const PowerLog* power_log_form() const noexcept { return std::get_if<PowerLog>(&form_); }

  double operator()(double r) const;

  bool operator==(const DimensionFunction&) const = default;

 private:
  explicit DimensionFunction(Form form) : form_(std::move(form)) {}
  friend DimensionFunction scaled_dimension_function(const DimensionFunction&, double);
  Form form_;
};

double eval_dimension_function(const DimensionFunction& f, double r);

// ---------------------------------------------------------------------------
// Approximating functions psi: N -> R+
// ---------------------------------------------------------------------------

enum class Monotonicity { NonIncreasing, NonMonotone, Unknown };

struct PowerApprox {
  double tau = 1.0;  // psi(q) = q^{-tau}
  bool operator==(const PowerApprox&) const = default;
};
// q^{-alpha} on the index set, q^{-beta} off it.
struct PiecewisePower {
  double alpha = 1.0;
  double beta = 1.0;
  IndexFamily on_set;
  bool operator==(const PiecewisePower&) const = default;
};
struct SampledApprox {
  std::vector<std::uint64_t> q;  // strictly increasing
  std::vector<double> value;
  bool operator==(const SampledApprox&) const = default;
};

class ApproxFunction {
 public:
  using Form = std::variant<PowerApprox, PiecewisePower, SampledApprox>;

  static ApproxFunction power(double tau);
  static ApproxFunction piecewise(double alpha, double beta, IndexFamily on_set);
  static ApproxFunction sampled(std::vector<std::pair<std::uint64_t, double>> table);
  // Dense table psi(1..n).
  static ApproxFunction sampled_dense(std::vector<double> values);

  const Form& form() const noexcept { return form_; }
  bool is_symbolic() const noexcept { return !std::holds_alternative<SampledApprox>(form_); }
  Monotonicity monotonicity() const noexcept { return monotone_; }
  // Overrides the derived flag, e.g. to mark a caller-supplied table as Unknown.
  ApproxFunction with_monotonicity(Monotonicity flag) const;

  double operator()(std::uint64_t q) const;
  // Largest q the function is defined at (UINT64_MAX for symbolic forms).
  std::uint64_t max_index() const noexcept;

  bool operator==(const ApproxFunction&) const = default;

 private:
  ApproxFunction(Form form, Monotonicity flag) : form_(std::move(form)), monotone_(flag) {}
  Form form_;
  Monotonicity monotone_ = Monotonicity::Unknown;
};

double eval_approx_function(const ApproxFunction& psi, std::uint64_t q);

// ---------------------------------------------------------------------------
// Decreasing positive sequences r_i, i >= 1 (radii, singular values, Upsilon)
// ---------------------------------------------------------------------------

struct PowerDecay {
  double coeff = 1.0;
  double p = 1.0;  // coeff * i^{-p}
  bool operator==(const PowerDecay&) const = default;
};
struct GeometricDecay {
  double coeff = 1.0;
  double ratio = 0.5;  // coeff * ratio^i
  bool operator==(const GeometricDecay&) const = default;
};
struct SampledSequence {
  std::vector<double> values;  // values[i-1] = r_i
  bool operator==(const SampledSequence&) const = default;
};

class RadiiRule {
 public:
  using Form = std::variant<PowerDecay, GeometricDecay, SampledSequence>;

  static RadiiRule power(double p, double coeff = 1.0);
  static RadiiRule geometric(double ratio, double coeff = 1.0);
  static RadiiRule sampled(std::vector<double> values);

  const Form& form() const noexcept { return form_; }
  bool is_symbolic() const noexcept { return !std::holds_alternative<SampledSequence>(form_); }
  double operator()(std::uint64_t i) const;
  std::uint64_t max_index() const noexcept;

  bool operator==(const RadiiRule&) const = default;

 private:
  explicit RadiiRule(Form form) : form_(std::move(form)) {}
  Form form_{PowerDecay{}};
};

// ---------------------------------------------------------------------------
// Hypothesis validation
// ---------------------------------------------------------------------------

enum class Direction { Increasing, Decreasing, Constant, None };

struct HypothesisReport {
  int k = 0;
  int l = 0;
  // (a) r^{-k} f(r) monotone as r -> 0.
  bool scaled_monotone = false;
  Direction scaled_direction = Direction::None;
  // (b) g(r) = r^{-l} f(r) is a dimension function.
  bool g_valid = false;
  std::string g_reason;  // empty when valid
  // f(2r) <= C f(r) near 0 (informational).
  bool doubling = false;
  // Exact for symbolic f, grid/table diagnostic for sampled f.
  bool exact = true;
};

HypothesisReport validate_hypotheses(const DimensionFunction& f, int k, int l);

// Direction of r^{-exponent} f(r) as r -> 0; exponent may be non-integer.
std::pair<bool, Direction> scaled_monotonicity(const DimensionFunction& f, double exponent);

// g(r) = r^{-l} f(r) as a function family (PowerLog stays symbolic).
DimensionFunction scaled_dimension_function(const DimensionFunction& f, double l);

}  // namespace limsup
