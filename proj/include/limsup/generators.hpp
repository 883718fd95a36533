#pragma once

// Finite truncations of the limsup set families: rationals, approximation-set
// generations, random coverings and self-similar covers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limsup/core.hpp"
#include "limsup/cover.hpp"
#include "limsup/formulas.hpp"

namespace limsup {

enum class RationalFilter { All, Coprime };

struct Rational {
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  bool operator==(const Rational&) const = default;
};

// p/q in [0,1] with q <= Q, ascending by value (ties by q).
std::vector<Rational> rationals(std::uint64_t Q, RationalFilter filter);

enum class ApproxSetting { SimultaneousBalls, WeightedRectangles, LinearFormsSlabs, CantorRestricted };

std::string to_string(ApproxSetting s);
ApproxSetting approx_setting_from_string(const std::string& name);

struct ApproxSetRequest {
  ApproxSetting setting = ApproxSetting::SimultaneousBalls;
  int k = 1;  // SimultaneousBalls / WeightedRectangles
  int n = 1;  // LinearFormsSlabs
  int m = 1;
  std::optional<ApproxFunction> psi;
  std::vector<double> y;    // inhomogeneous shift, empty for 0
  std::vector<double> tau;  // WeightedRectangles exponents
  std::uint64_t q_min = 1;  // generation window [q_min, q_max]
  std::uint64_t q_max = 1;
  RationalFilter filter = RationalFilter::All;
};

inline constexpr std::uint64_t kMaxCoverElements = 50'000'000;

CoverSpec approx_set_union(const ApproxSetRequest& request);

// Middle-third Cantor membership of p / 3^n.
bool in_cantor_set(std::uint64_t p, unsigned n);

struct RandomCoverSample {
  std::uint64_t seed = 0;
  RadiiRule radii = RadiiRule::power(1.0);
  int k = 1;
  std::uint64_t n = 0;
  std::vector<double> translations;  // n * k, in [0,1)
  bool operator==(const RandomCoverSample&) const = default;
};

struct RandomCover {
  RandomCoverSample sample;
  CoverSpec cover;  // torus; intervals for k = 1, sup-norm cubes otherwise
};

RandomCover random_cover(const RadiiRule& radii, std::uint64_t n, int k, std::uint64_t seed);
// Cover of elements first..last (1-based, inclusive) of a sample.
CoverSpec random_cover_window(const RandomCoverSample& sample, std::uint64_t first, std::uint64_t last);

// Level-`depth` intervals of the self-similar set with the given ratios placed with
// equal gaps on [0,1].
CoverSpec ifs_cover(const std::vector<double>& ratios, int depth);

}  // namespace limsup
