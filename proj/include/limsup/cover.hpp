#pragma once

// Finite unions of axis-aligned boxes or slabs on [0,1]^k or the torus T^k.
// Storage is struct-of-arrays so that generations with millions of elements stay compact.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace limsup {

enum class Geometry { Intervals, Rectangles, Slabs };

std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& name);

struct CoverSpec {
  int k = 1;
  Geometry geometry = Geometry::Intervals;
  bool torus = false;
  // Boxes: prod_i (c_i - h_i, c_i + h_i). Slabs: {x : |<n, x> - offset| < thickness}.
  std::vector<double> centers;
  std::vector<double> half_widths;
  std::vector<double> normals;
  std::vector<double> offsets;
  std::vector<double> thickness;
  // Generation window q in [window_lo, window_hi] the union was built from.
  std::uint64_t window_lo = 0;
  std::uint64_t window_hi = 0;

  std::size_t size() const noexcept {
    return geometry == Geometry::Slabs ? offsets.size() : centers.size() / static_cast<std::size_t>(k);
  }
  bool empty() const noexcept { return size() == 0; }

  std::span<const double> center(std::size_t i) const { return {centers.data() + i * k, static_cast<std::size_t>(k)}; }
  std::span<const double> half_width(std::size_t i) const { return {half_widths.data() + i * k, static_cast<std::size_t>(k)}; }
  std::span<const double> normal(std::size_t i) const { return {normals.data() + i * k, static_cast<std::size_t>(k)}; }

  // Validates positivity; on the torus centers are reduced mod 1.
  void add_box(std::span<const double> center, std::span<const double> half_width);
  void add_slab(std::span<const double> normal, double offset, double thickness);

  // Sum of element volumes inside the ambient cube (boxes) or the slab volume bound.
  double total_volume() const;
  // Point membership; x in [0,1)^k.
  bool contains(std::span<const double> x) const;
  bool element_contains(std::size_t i, const double* x) const;

  bool operator==(const CoverSpec&) const = default;
};

CoverSpec make_cover(int k, Geometry geometry, bool torus = false);

}  // namespace limsup
