#pragma once

// Hot loops, each in a serial reference form and an OpenMP form. The OpenMP forms
// split work into fixed chunks and reduce chunk results in index order, so their
// output does not depend on the thread count.

#include <cstdint>
#include <functional>
#include <vector>

#include "limsup/core.hpp"
#include "limsup/cover.hpp"
#include "limsup/rng.hpp"

namespace limsup::kernels {

using TermFn = std::function<double(std::uint64_t)>;

inline constexpr std::uint64_t kChunk = 4096;

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

enum class EnergyShape { Box, Ball };

// Pair-sampling setup for E = double integral of kernel(|x - y|) over A x A.
// x is uniform in A, y = x + rho u with u uniform on the sphere and
// rho ~ rho^{k-1-s} on [0, diameter]; `weight(rho)` multiplies rho^{-s} into the
// actual kernel (1 for the Riesz s-kernel).
struct EnergyProblem {
  int k = 1;
  EnergyShape shape = EnergyShape::Box;
  std::vector<double> center;
  std::vector<double> half_width;  // Box
  double radius = 0.0;             // Ball
  double s = 0.0;
  std::function<double(double)> weight;  // empty means 1
};

double energy_volume(const EnergyProblem& p);
double energy_diameter(const EnergyProblem& p);

// Spatial hash of a cover for point-membership queries on [0,1)^k.
class CoverIndex {
 public:
  explicit CoverIndex(const CoverSpec& cover);
  bool contains(const double* x) const;

 private:
  const CoverSpec* cover_;
  int grid_ = 1;
  std::vector<std::uint8_t> full_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
  std::size_t cell_of(const double* x) const;
};

namespace serial {
// Sum of term(q) over each block [edges[i], edges[i+1]).
std::vector<double> block_sums(const TermFn& term, const std::vector<std::uint64_t>& edges);
MonteCarloResult energy(const EnergyProblem& p, std::uint64_t samples, const CounterRng& rng);
// Fraction of uniform points of [0,1)^k inside the cover.
MonteCarloResult coverage(const CoverSpec& cover, std::uint64_t samples, const CounterRng& rng);
// min over qs of -log psi(q) / log q; qs must be >= 2.
double lower_order_min(const ApproxFunction& psi, const std::vector<std::uint64_t>& qs);
}  // namespace serial

namespace omp {
std::vector<double> block_sums(const TermFn& term, const std::vector<std::uint64_t>& edges);
MonteCarloResult energy(const EnergyProblem& p, std::uint64_t samples, const CounterRng& rng);
MonteCarloResult coverage(const CoverSpec& cover, std::uint64_t samples, const CounterRng& rng);
double lower_order_min(const ApproxFunction& psi, const std::vector<std::uint64_t>& qs);
}  // namespace omp

}  // namespace limsup::kernels
