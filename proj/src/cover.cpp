#include "limsup/cover.hpp"

#include <algorithm>
#include <cmath>

#include "limsup/errors.hpp"

namespace limsup {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::Intervals: return "Intervals";
    case Geometry::Rectangles: return "Rectangles";
    case Geometry::Slabs: return "Slabs";
  }
  return "Intervals";
}

Geometry geometry_from_string(const std::string& name) {
  if (name == "Intervals") return Geometry::Intervals;
  if (name == "Rectangles") return Geometry::Rectangles;
  if (name == "Slabs") return Geometry::Slabs;
  throw DomainError("unknown cover geometry: " + name);
}

CoverSpec make_cover(int k, Geometry geometry, bool torus) {
  if (k < 1 || k > 3) throw DomainError("covers live in dimension 1..3");
  if (geometry == Geometry::Intervals && k != 1) throw DomainError("interval covers need k = 1");
  CoverSpec cover;
  cover.k = k;
  cover.geometry = geometry;
  cover.torus = torus;
  return cover;
}

void CoverSpec::add_box(std::span<const double> center, std::span<const double> half_width) {
  if (geometry == Geometry::Slabs) throw DomainError("slab cover cannot take boxes");
  if (static_cast<int>(center.size()) != k || static_cast<int>(half_width.size()) != k)
    throw DomainError("box dimension does not match the cover");
  for (int i = 0; i < k; ++i) {
    if (!(half_width[i] > 0.0)) throw DomainError("box half-widths must be positive");
    double c = center[i];
    if (torus) c -= std::floor(c);
    centers.push_back(c);
    half_widths.push_back(half_width[i]);
  }
}

void CoverSpec::add_slab(std::span<const double> normal, double offset, double thick) {
  if (geometry != Geometry::Slabs) throw DomainError("box cover cannot take slabs");
  if (static_cast<int>(normal.size()) != k) throw DomainError("slab normal dimension mismatch");
  if (std::all_of(normal.begin(), normal.end(), [](double v) { return v == 0.0; }))
    throw DomainError("slab normal must be nonzero");
  if (!(thick > 0.0)) throw DomainError("slab thickness must be positive");
  normals.insert(normals.end(), normal.begin(), normal.end());
  offsets.push_back(offset);
  thickness.push_back(thick);
}

double CoverSpec::total_volume() const {
  double total = 0.0;
  if (geometry == Geometry::Slabs) {
    // Hyperplane sections of the unit cube have area at most sqrt(2).
    for (std::size_t i = 0; i < size(); ++i) {
      double norm = 0.0;
      for (double v : normal(i)) norm += v * v;
      total += std::min(1.0, std::sqrt(2.0) * 2.0 * thickness[i] / std::sqrt(norm));
    }
    return total;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    double vol = 1.0;
    const auto c = center(i);
    const auto h = half_width(i);
    for (int a = 0; a < k; ++a) {
      if (torus) {
        vol *= std::min(1.0, 2.0 * h[a]);
      } else {
        vol *= std::max(0.0, std::min(1.0, c[a] + h[a]) - std::max(0.0, c[a] - h[a]));
      }
    }
    total += vol;
  }
  return total;
}

bool CoverSpec::element_contains(std::size_t i, const double* x) const {
  if (geometry == Geometry::Slabs) {
    double dot = 0.0;
    for (int a = 0; a < k; ++a) dot += normals[i * k + a] * x[a];
    return std::abs(dot - offsets[i]) < thickness[i];
  }
  for (int a = 0; a < k; ++a) {
    double d = std::abs(x[a] - centers[i * k + a]);
    if (torus) d = std::min(d, 1.0 - d);
    if (!(d < half_widths[i * k + a])) return false;
  }
  return true;
}

bool CoverSpec::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (element_contains(i, x.data())) return true;
  return false;
}

}  // namespace limsup
