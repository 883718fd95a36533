#pragma once

// Mass transference transforms and the hypothesis-checked dichotomy pipelines.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "limsup/core.hpp"
#include "limsup/series.hpp"

namespace limsup {

struct BallSpec {
  std::vector<double> center;
  double radius = 0.0;
  int k = 1;
  bool operator==(const BallSpec&) const = default;
};

// B^f = B(x, f(r)^{1/k}).
BallSpec ball_f_transform(const BallSpec& b, const DimensionFunction& f);
// B^{f,g} = B(x, g^{-1}(f(r))) for g(r) = r^kappa.
BallSpec ball_fg_transform(const BallSpec& b, const DimensionFunction& f, const DimensionFunction& g);

// An l-dimensional affine plane {x : <n_j, x> = c_j, j = 1..m} in R^k.
struct ResonantPlane {
  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
};

class ResonantFamily {
 public:
  // Normals are orthonormalised; Upsilon must be positive and tend to 0.
  ResonantFamily(int k, int l, std::vector<ResonantPlane> planes, RadiiRule upsilon);

  int k() const noexcept { return k_; }
  int l() const noexcept { return l_; }
  int m() const noexcept { return k_ - l_; }
  const std::vector<ResonantPlane>& planes() const noexcept { return planes_; }
  const RadiiRule& upsilon() const noexcept { return upsilon_; }

  double distance(std::size_t plane, std::span<const double> x) const;
  // x in Delta(R_n, Upsilon_n), planes indexed from 1.
  bool in_neighbourhood(std::uint64_t n, std::span<const double> x) const;

 private:
  int k_;
  int l_;
  std::vector<ResonantPlane> planes_;
  RadiiRule upsilon_;
};

// c n^{-p} max(a log n + b, 1)^B.
struct PowerLogSequence {
  double coeff = 1.0;
  double p = 0.0;
  double log_scale = 0.0;
  double log_shift = 0.0;
  double log_exponent = 0.0;
  bool operator==(const PowerLogSequence&) const = default;
};

using SequenceRule = std::variant<RadiiRule, PowerLogSequence>;

double eval_sequence(const SequenceRule& rule, std::uint64_t n);

// n -> g(Upsilon_n)^{1/m}, g(r) = r^{-l} f(r).
SequenceRule upsilon_transform(const ResonantFamily& family, const DimensionFunction& f);

enum class ThetaVariant { ByModulus, ByVectorQ, ByPQ };

// theta(q) = q g(psi(q)/q)^{1/m}, g(r) = r^{-m(n-1)} f(r). Symbolic psi with b = 0
// stays symbolic; otherwise the output is tabulated on 1..horizon (or the table of psi).
ApproxFunction theta_transform(const ApproxFunction& psi, const DimensionFunction& f, int n, int m,
                               std::uint64_t horizon = 1 << 16);

using VectorQRule = std::function<double(std::span<const long>)>;
using PQRule = std::function<double(std::span<const long>, std::span<const long>)>;

// Theta(q) = |q| g(Psi(q)/|q|)^{1/m} with the sup norm |q|.
VectorQRule theta_transform(const VectorQRule& psi, const DimensionFunction& f, int n, int m);
// Theta(p, q) = |q| g(Psi(p, q)/|q|)^{1/m}; the caller asserts Psi(p,q)/|q| -> 0.
PQRule theta_transform(const PQRule& psi, const DimensionFunction& f, int n, int m, bool decay_asserted);

enum class Setting { KhintchineSim, Jarnik, KG, KGHausdorff, InhomKGHausdorff, CantorLSV };

std::string to_string(Setting s);
Setting setting_from_string(const std::string& name);

enum class Verdict { ZeroMeasure, FullMeasure, HypothesesNotMet, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& name);

struct DichotomyRequest {
  Setting setting = Setting::KhintchineSim;
  int n = 1;
  int m = 1;
  int k = 1;
  ApproxFunction psi = ApproxFunction::power(1.0);
  std::optional<DimensionFunction> f;
  bool y_present = false;
  IndexFamily base = IndexFamily::geometric(3);
};

struct DichotomyResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string failed_hypothesis;  // empty unless HypothesesNotMet
  std::optional<SeriesVerdict> series;
  bool operator==(const DichotomyResult&) const = default;
};

DichotomyResult dichotomy_verdict(const DichotomyRequest& request);

}  // namespace limsup
