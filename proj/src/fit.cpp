#include "limsup/fit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

#include "limsup/errors.hpp"

namespace limsup {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw DomainError("line fit needs at least 3 paired points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    sse += r * r;
  }
  fit.residual = std::sqrt(sse / static_cast<double>(n));
  const double dof = static_cast<double>(n - 2);
  const boost::math::students_t dist(dof);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.slope_half_width = t * std::sqrt(sse / dof / sxx);
  return fit;
}

std::vector<double> fit_plane(const std::vector<double>& x1, const std::vector<double>& x2,
                              const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (x1.size() != n || x2.size() != n || n < 3) throw DomainError("plane fit needs at least 3 points");
  // Centre the regressors to keep the normal equations well conditioned.
  double m1 = 0.0, m2 = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m1 += x1[i];
    m2 += x2[i];
    my += y[i];
  }
  m1 /= static_cast<double>(n);
  m2 /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = x1[i] - m1;
    const double v = x2[i] - m2;
    const double w = y[i] - my;
    a11 += u * u;
    a12 += u * v;
    a22 += v * v;
    b1 += u * w;
    b2 += v * w;
  }
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-300)) throw DomainError("plane fit is degenerate");
  const double c1 = (b1 * a22 - b2 * a12) / det;
  const double c2 = (a11 * b2 - a12 * b1) / det;
  return {my - c1 * m1 - c2 * m2, c1, c2};
}

}  // namespace limsup
