#pragma once

// Closed-form dimension values and root-finding dimension solvers.

#include <string>
#include <vector>

#include "limsup/core.hpp"

namespace limsup {

// Value of a min_j formula with every minimising j (1-based).
struct MinFormula {
  double value = 0.0;
  std::vector<int> argmin;
  bool operator==(const MinFormula&) const = default;
};

// dim A(tau) = 2/(tau+1), tau > 1.
double jb_dim(double tau);

// Two-branch formula in the lower order lambda; `branch` receives "power" or "full".
double levesley_dim(int n, int m, double lambda, std::string* branch = nullptr);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Non-monotone bounds for n >= 3, lambda > n/m.
Bounds levesley_bounds_nonmonotone(int n, int m, double lambda);

struct CounterexampleParams {
  double beta = 0.0;
  double gamma = 0.0;
  IndexFamily on_set;  // {ceil(k^-gamma)}
  ApproxFunction psi = ApproxFunction::power(1.0);
};

CounterexampleParams counterexample_params(int n, int m, double alpha, double s0);
ApproxFunction counterexample_psi(int n, int m, double alpha, double s0);

// min_j (k + nu + j tau_j - sum_{i<=j} tau_i) / (1 + tau_j).
MinFormula rynne_dim(int k, const std::vector<double>& tau, double nu);

// min_j (k + j a_j - sum_{i<=j} a_i) / a_j.
MinFormula wwx_exponent(int k, const std::vector<double>& a);

// min_j (k0 + j a_j - sum_{i<=j} a_i) / a_j + k - k0.
MinFormula slicing_bounds(int k, int k0, const std::vector<double>& a);

// min_j (sum t_i + j a_j t_j - sum_{i<=j} a_i t_i) / (a_j t_j).
MinFormula rect_upper_bound(int k, const std::vector<double>& t, const std::vector<double>& a);

// Root of sum c_i^s = 1.
double similarity_dim(const std::vector<double>& ratios);

// Singular values sigma_1 >= ... >= sigma_k of one linear map.
struct LinearMapSpec {
  std::vector<double> sigma;
};

void validate_linear_map(const LinearMapSpec& map);

// Phi^t, continuous extension (sigma_1...sigma_k)^{t/k} for t >= k.
double singular_value_fn(const std::vector<double>& sigma, double t);

// Root of sum_T Phi^t(T) = 1.
double affinity_dim(const std::vector<LinearMapSpec>& maps);

double random_cover_dim(double s0);

// inf{0 < t <= k : sum_i Phi^t(T_i) < inf} for symbolic sigma_j(T_i) = sigma[j](i).
double affine_cover_dim(const std::vector<RadiiRule>& sigma);

// Critical exponent (log 2/log 3)/tau of the Cantor-restricted series with f = r^s.
double cantor_critical(double tau);

}  // namespace limsup
