#pragma once

#include <vector>

namespace limsup {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_half_width = 0.0;  // 95% two-sided, Student t with n - 2 dof
  double residual = 0.0;          // root-mean-square residual
};

// Ordinary least squares y ~ a + b x; needs at least 3 points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Least squares y ~ c0 + c1 x1 + c2 x2; returns {c0, c1, c2}.
std::vector<double> fit_plane(const std::vector<double>& x1, const std::vector<double>& x2,
                              const std::vector<double>& y);

}  // namespace limsup
