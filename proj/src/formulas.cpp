#include "limsup/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "limsup/errors.hpp"
#include "limsup/series.hpp"

namespace limsup {

namespace {

constexpr double kTieTol = 1e-12;

MinFormula min_over(const std::vector<double>& values) {
  MinFormula out;
  out.value = *std::min_element(values.begin(), values.end());
  const double tol = kTieTol * std::max(1.0, std::abs(out.value));
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] - out.value <= tol) out.argmin.push_back(static_cast<int>(j + 1));
  return out;
}

void require_size(const std::vector<double>& v, int k, const char* name) {
  if (k < 1) throw DomainError("dimension k must be >= 1");
  if (static_cast<int>(v.size()) != k)
    throw DomainError(std::string(name) + " must have exactly k entries");
}

void require_sorted(const std::vector<double>& v, const char* what) {
  if (!std::is_sorted(v.begin(), v.end())) throw DomainError(std::string(what) + " must be sorted non-decreasing");
}

void require_shrink_vector(const std::vector<double>& a) {
  require_sorted(a, "a");
  if (a.front() < 1.0) throw DomainError("a_1 >= 1 required");
}

template <typename F>
double bisect_decreasing(F&& objective, double lo, double hi, double width) {
  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (objective(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double jb_dim(double tau) {
  if (!(tau > 1.0)) throw DomainError("tau > 1 required");
  return 2.0 / (tau + 1.0);
}

double levesley_dim(int n, int m, double lambda, std::string* branch) {
  if (n < 1 || m < 1) throw DomainError("n, m >= 1 required");
  if (!(lambda >= 0.0)) throw DomainError("lambda >= 0 required");
  if (lambda > static_cast<double>(n) / m) {
    if (branch) *branch = "power";
    return m * (n - 1) + static_cast<double>(m + n) / (lambda + 1.0);
  }
  if (branch) *branch = "full";
  return static_cast<double>(n * m);
}

Bounds levesley_bounds_nonmonotone(int n, int m, double lambda) {
  if (n < 3 || m < 1) throw DomainError("n >= 3 and m >= 1 required");
  if (!(lambda > static_cast<double>(n) / m)) throw DomainError("lambda > n/m required");
  const double base = m * (n - 1);
  return {base + (m + n - 1) / (lambda + 1.0), base + (m + n) / (lambda + 1.0)};
}

CounterexampleParams counterexample_params(int n, int m, double alpha, double s0) {
  if (n < 1 || m < 1) throw DomainError("n, m >= 1 required");
  if (!(alpha > static_cast<double>(n) / m)) throw DomainError("alpha > n/m required");
  const double l = m * (n - 1);
  const double lo = l + (m + n - 1) / (alpha + 1.0);
  const double hi = l + (m + n) / (alpha + 1.0);
  if (!(s0 > lo && s0 < hi)) throw DomainError("s0 must lie strictly between the non-monotone bounds");
  CounterexampleParams out;
  out.beta = (n + m) / (s0 - l) - 1.0;
  out.gamma = 2.0 / ((n + m - 1) - (alpha + 1.0) * (s0 - l));
  out.on_set = IndexFamily::polynomial_ceil(-out.gamma);
  out.psi = ApproxFunction::piecewise(alpha, out.beta, out.on_set);
  return out;
}

ApproxFunction counterexample_psi(int n, int m, double alpha, double s0) {
  return counterexample_params(n, m, alpha, s0).psi;
}

MinFormula rynne_dim(int k, const std::vector<double>& tau, double nu) {
  require_size(tau, k, "tau");
  require_sorted(tau, "tau");
  if (!(tau.front() > 0.0)) throw DomainError("tau must be positive");
  if (!(nu >= 0.0)) throw DomainError("nu >= 0 required");
  const double sigma = std::accumulate(tau.begin(), tau.end(), 0.0);
  if (sigma < nu) throw DomainError("sigma(tau) < nu");
  std::vector<double> values(k);
  double prefix = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double tj = tau[j - 1];
    prefix += tj;
    values[j - 1] = (k + nu + j * tj - prefix) / (1.0 + tj);
  }
  return min_over(values);
}

MinFormula wwx_exponent(int k, const std::vector<double>& a) {
  require_size(a, k, "a");
  require_shrink_vector(a);
  std::vector<double> values(k);
  double prefix = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double aj = a[j - 1];
    prefix += aj;
    values[j - 1] = (k + j * aj - prefix) / aj;
  }
  return min_over(values);
}

MinFormula slicing_bounds(int k, int k0, const std::vector<double>& a) {
  if (k0 < 1) throw DomainError("k0 >= 1 required");
  if (k0 > k) throw DomainError("k0 <= k required");
  MinFormula out = wwx_exponent(k0, a);
  out.value += k - k0;
  return out;
}

MinFormula rect_upper_bound(int k, const std::vector<double>& t, const std::vector<double>& a) {
  require_size(t, k, "t");
  require_size(a, k, "a");
  std::vector<double> at(k);
  double total_t = 0.0;
  for (int i = 0; i < k; ++i) {
    if (t[i] < 1.0 || a[i] < 1.0) throw DomainError("t_i >= 1 and a_i >= 1 required");
    at[i] = a[i] * t[i];
    total_t += t[i];
  }
  require_sorted(at, "products a_i t_i");
  std::vector<double> values(k);
  double prefix = 0.0;
  for (int j = 1; j <= k; ++j) {
    prefix += at[j - 1];
    values[j - 1] = (total_t + j * at[j - 1] - prefix) / at[j - 1];
  }
  return min_over(values);
}

double similarity_dim(const std::vector<double>& ratios) {
  if (ratios.empty()) throw DomainError("at least one ratio required");
  for (double c : ratios)
    if (!(c > 0.0 && c < 1.0)) throw DomainError("ratios must lie in (0,1)");
  if (ratios.size() == 1) return 0.0;
  const double cmax = *std::max_element(ratios.begin(), ratios.end());
  const double hi = std::log(static_cast<double>(ratios.size())) / std::log(1.0 / cmax);
  const auto objective = [&](double s) {
    double sum = 0.0;
    for (double c : ratios) sum += std::pow(c, s);
    return sum;
  };
  return bisect_decreasing(objective, 0.0, hi, 1e-15);
}

void validate_linear_map(const LinearMapSpec& map) {
  if (map.sigma.empty()) throw DomainError("linear map needs singular values");
  for (std::size_t j = 0; j < map.sigma.size(); ++j) {
    if (!(map.sigma[j] > 0.0 && map.sigma[j] < 1.0)) throw DomainError("singular values must lie in (0,1)");
    if (j > 0 && map.sigma[j] > map.sigma[j - 1]) throw DomainError("singular values must be non-increasing");
  }
}

double singular_value_fn(const std::vector<double>& sigma, double t) {
  if (!(t >= 0.0)) throw DomainError("t >= 0 required");
  const auto k = sigma.size();
  if (k == 0) throw DomainError("singular values required");
  if (t >= static_cast<double>(k)) {
    double prod = 1.0;
    for (double s : sigma) prod *= s;
    return std::pow(prod, t / static_cast<double>(k));
  }
  const auto n = static_cast<std::size_t>(std::floor(t)) + 1;
  double value = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) value *= sigma[j];
  return value * std::pow(sigma[n - 1], t - static_cast<double>(n - 1));
}

double affinity_dim(const std::vector<LinearMapSpec>& maps) {
  if (maps.empty()) throw DomainError("affinity dimension needs at least one map");
  std::size_t k = 0;
  double smax = 0.0;
  for (const auto& map : maps) {
    validate_linear_map(map);
    k = std::max(k, map.sigma.size());
    smax = std::max(smax, map.sigma.front());
  }
  const double hi = 2.0 * static_cast<double>(k) +
                    std::log(static_cast<double>(maps.size())) / std::log(1.0 / smax);
  const auto objective = [&](double t) {
    double sum = 0.0;
    for (const auto& map : maps) sum += singular_value_fn(map.sigma, t);
    return sum;
  };
  return bisect_decreasing(objective, 0.0, hi, 1e-13);
}

double random_cover_dim(double s0) {
  if (!(s0 >= 0.0)) throw DomainError("s0 >= 0 required");
  return std::min(1.0, s0);
}

double affine_cover_dim(const std::vector<RadiiRule>& sigma) {
  if (sigma.empty()) throw DomainError("singular value rules required");
  for (const auto& rule : sigma)
    if (!rule.is_symbolic()) throw UnsupportedError("affine cover dimension needs symbolic singular value rules");
  const double k = static_cast<double>(sigma.size());
  const auto converges = [&](double t) {
    SeriesRequest r;
    r.kind = SeriesKind::SVFSum;
    r.sigma = sigma;
    r.t = t;
    return classify(build_series(r)).cls == SeriesClass::Converges;
  };
  if (!converges(k)) return k;
  double lo = 0.0;
  double hi = k;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (converges(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double cantor_critical(double tau) {
  if (!(tau > 0.0)) throw DomainError("tau > 0 required");
  return std::log(2.0) / std::log(3.0) / tau;
}

}  // namespace limsup
