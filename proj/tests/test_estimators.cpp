#include <doctest.h>

#include <cmath>
#include <random>

#include "limsup/errors.hpp"
#include "limsup/estimators.hpp"
#include "limsup/formulas.hpp"
#include "oracles.hpp"

using namespace limsup;

namespace {

CoverSpec interval_cover(const std::vector<std::pair<double, double>>& ivs, bool torus = false) {
  CoverSpec c = make_cover(1, Geometry::Intervals, torus);
  for (auto [a, b] : ivs) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    c.add_box({&m, 1}, {&h, 1});
  }
  return c;
}

CoverSpec random_boxes(int k, int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uc(0.0, 1.0), uh(0.001, 0.08);
  CoverSpec c = make_cover(k, k == 1 ? Geometry::Intervals : Geometry::Rectangles);
  for (int i = 0; i < n; ++i) {
    double ctr[3], h[3];
    for (int a = 0; a < k; ++a) {
      ctr[a] = uc(gen);
      h[a] = uh(gen);
    }
    c.add_box({ctr, std::size_t(k)}, {h, std::size_t(k)});
  }
  return c;
}

}  // namespace

TEST_SUITE("estimators") {
  TEST_CASE("union measure") {
    CHECK(union_measure(interval_cover({{0, 0.5}, {0.25, 0.75}})).value == doctest::Approx(0.75));
    CHECK(union_measure(make_cover(1, Geometry::Intervals)).value == 0.0);
    CHECK(union_measure(interval_cover({{0.85, 1.05}}, true)).value == doctest::Approx(0.2));
    CHECK(union_measure(interval_cover({{0.85, 1.05}}, false)).value == doctest::Approx(0.15));
    CHECK(union_measure(interval_cover({{-0.2, 1.3}}, true)).value == doctest::Approx(1.0));
    CHECK(union_measure(interval_cover({{0.1, 0.2}})).exact);
  }

  TEST_CASE("union measure matches the sweep oracle and the union bound") {
    std::mt19937_64 gen(12);
    for (int t = 0; t < 50; ++t) {
      const auto c = random_boxes(1, 1 + int(gen() % 200), gen());
      std::vector<std::pair<double, double>> ivs;
      double total = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        ivs.emplace_back(c.centers[i] - c.half_widths[i], c.centers[i] + c.half_widths[i]);
        total += 2 * c.half_widths[i];
      }
      const double m = union_measure(c).value;
      CHECK(m == doctest::Approx(oracle::union_length(ivs)).epsilon(1e-12));
      CHECK(m <= total + 1e-12);
      CHECK(interval_union_length(ivs) == doctest::Approx(m).epsilon(1e-12));
    }
  }

  TEST_CASE("monte carlo measure in two dimensions") {
    CoverSpec c = make_cover(2, Geometry::Rectangles);
    const double ctr[2] = {0.5, 0.5}, h[2] = {0.25, 0.25};
    c.add_box(ctr, h);
    const auto m = union_measure(c, 1 << 18, 3);
    CHECK_FALSE(m.exact);
    CHECK(std::abs(m.value - 0.25) < 4 * m.standard_error + 1e-12);
  }

  TEST_CASE("box count examples") {
    CoverSpec sq = make_cover(2, Geometry::Rectangles);
    const double ctr[2] = {0.5, 0.5}, h[2] = {0.5, 0.5};
    sq.add_box(ctr, h);
    CHECK(box_count(sq, 0.25) == 16);
    CHECK(box_count(interval_cover({{0, 0.5}}), 0.125) == 4);
    CHECK(box_count(interval_cover({{0.01, 0.02}, {0.6, 0.61}}), 0.125) == 2);
    CHECK(box_count(make_cover(1, Geometry::Intervals), 0.5) == 0);
    CHECK_THROWS_AS(box_count(sq, 0.0), DomainError);
    CHECK_THROWS_AS(box_count(sq, 2.0), DomainError);
  }

  TEST_CASE("box count agrees with cell enumeration") {
    std::mt19937_64 gen(99);
    for (int t = 0; t < 30; ++t) {
      const int k = 1 + int(t % 2);
      const auto c = random_boxes(k, 1 + int(gen() % 60), gen());
      for (int j = 2; j <= 6; ++j) {
        const double d = std::ldexp(1.0, -j);
        CHECK(box_count(c, d) == oracle::box_count(c, d));
      }
    }
  }

  TEST_CASE("box count is monotone under refinement") {
    std::mt19937_64 gen(7);
    for (int k = 1; k <= 3; ++k)
      for (int t = 0; t < 10; ++t) {
        const auto c = random_boxes(k, 50, gen());
        std::uint64_t prev = 0;
        for (int j = 1; j <= (k == 3 ? 6 : 9); ++j) {
          const auto n = box_count(c, std::ldexp(1.0, -j));
          CHECK(n >= prev);
          prev = n;
        }
      }
  }

  TEST_CASE("dim fit") {
    std::vector<ScalePoint> a, b, c;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (int j = 1; j <= 8; ++j) {
      const double d = std::ldexp(1.0, -j);
      a.push_back({d, std::pow(d, -0.5)});
      b.push_back({d, std::pow(d, -2.0)});
      c.push_back({d, std::pow(d, -2.0 / 3) * (1 + noise(gen))});
    }
    const auto ea = dim_fit(a);
    CHECK(ea.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ea.half_width < 1e-9);
    CHECK(dim_fit(b).value == doctest::Approx(2).epsilon(1e-12));
    CHECK(std::abs(dim_fit(c).value - 2.0 / 3) < 0.05);
    std::vector<ScalePoint> flat{{0.5, 3}, {0.25, 3}, {0.125, 3}, {0.0625, 3}};
    const auto f = dim_fit(flat);
    CHECK(f.value == 0);
    CHECK(f.infinite_width);
    CHECK_THROWS_AS(dim_fit({{0.5, 1}, {0.25, 2}, {0.125, 4}}), DomainError);
  }

  TEST_CASE("natural covers of self-similar sets") {
    for (double c : {1.0 / 3, 0.25, 0.4}) {
      NaturalCoverFamily fam;
      fam.kind = FamilyKind::Ifs;
      fam.ratios = {c, c};
      std::vector<ScheduleLevel> sched;
      for (int d = 5; d <= 12; ++d) sched.push_back({std::uint64_t(d), 0.0});
      const auto e = natural_cover_estimate(fam, sched);
      CHECK(std::abs(e.value - similarity_dim({c, c})) < 0.01);
      CHECK(e.scales.size() == 8);
    }
  }

  TEST_CASE("tail coverage") {
    const auto s = random_cover(RadiiRule::power(1, 0.5), 2000, 1, 11).sample;
    double prev = 0;
    for (std::uint64_t N : {20u, 100u, 500u, 2000u}) {
      const double v = tail_coverage(s, 10, N).value;
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(tail_coverage(s, 37, 37).value == doctest::Approx(std::min(1.0, 2 * s.radii(37))));
    CHECK_THROWS_AS(tail_coverage(s, 10, 5000), DomainError);
  }

  TEST_CASE("energy of the unit interval") {
    const auto r = energy(unit_interval(), 0.5, 1 << 18, 1);
    CHECK(r.energy == doctest::Approx(oracle::unit_interval_energy(0.5)).epsilon(0.02));
    CHECK(r.g == doctest::Approx(0.375).epsilon(0.02));
    CHECK_FALSE(r.divergent);
    const auto d = energy(unit_interval(), 1.0, 1 << 14, 1);
    CHECK(d.divergent);
    CHECK(std::isinf(d.energy));
    CHECK_THROWS_AS(energy(unit_interval(), 0.5, 100, 1), DomainError);
    for (double s : {0.2, 0.7}) {
      const auto e = energy(unit_interval(), s, 1 << 18, 3);
      CHECK(e.energy == doctest::Approx(oracle::unit_interval_energy(s)).epsilon(0.03));
    }
  }

  TEST_CASE("energy with a dimension function") {
    const auto a = energy(unit_interval(), DimensionFunction::power(0.5), 1 << 16, 5);
    const auto b = energy(unit_interval(), 0.5, 1 << 16, 5);
    CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-12));
    CHECK(energy(unit_ball(2), DimensionFunction::power_log(2, 0.5), 1 << 14, 1).divergent);
    CHECK_THROWS_AS(energy(unit_ball(2), DimensionFunction::power_log(2, 2), 1 << 14, 1), UnsupportedError);
    const auto l = energy(unit_interval(), DimensionFunction::power_log(0.5, 1), 1 << 16, 2);
    CHECK(l.energy < b.energy);
    CHECK_FALSE(l.divergent);
  }

  TEST_CASE("content criterion") {
    const auto a = content_sum_criterion(RadiiRule::power(2), 1, DimensionFunction::power(0.6));
    CHECK(a.verdict.cls == SeriesClass::Converges);
    REQUIRE(a.verdict.exponent.has_value());
    CHECK(*a.verdict.exponent == doctest::Approx(-1.2));
    CHECK(a.lower_sum <= a.upper_sum);
    CHECK(a.upper_sum > 0);
    const auto b = content_sum_criterion(RadiiRule::power(2), 1, DimensionFunction::power(0.5));
    CHECK(b.verdict.cls == SeriesClass::Diverges);
    const auto e = content_sum_criterion(make_cover(1, Geometry::Intervals), DimensionFunction::power(0.5));
    CHECK(e.verdict.cls == SeriesClass::Converges);
    CHECK(e.upper_sum == 0);
    CHECK(e.elements == 0);
  }

  TEST_CASE("content envelope brackets the content") {
    for (double s : {0.3, 0.7, 1.0}) {
      const auto f = DimensionFunction::power(s);
      const auto env = content_envelope({0.01}, true, f);
      CHECK(env.upper == doctest::Approx(std::pow(0.02, s)));
      CHECK(env.lower <= env.upper + 1e-15);
      CHECK(env.lower > 0);
    }
    // For f = r the content of an interval is its length.
    const auto id = content_envelope({0.05}, true, DimensionFunction::power(1));
    CHECK(id.lower == doctest::Approx(0.1));
  }

  TEST_CASE("lower order diagnostic") {
    const auto p = lower_order_diag(ApproxFunction::power(3), 16);
    CHECK(p.lambda_full == doctest::Approx(3));
    CHECK(p.lambda_dyadic == doctest::Approx(3));
    REQUIRE(p.exact.has_value());
    CHECK(*p.exact == 3);
    CHECK(p.window_lo == 256);
    CHECK(p.window_hi == 65536);

    const auto c = lower_order_diag(counterexample_psi(3, 1, 4, 2.7), 20);
    CHECK(std::abs(c.lambda_full - 4) < 0.1);
    CHECK(*c.exact == 4);
    CHECK(c.points <= kLowerOrderPointCap + 64);
    CHECK_THROWS_AS(lower_order_diag(ApproxFunction::power(3), 5), DomainError);
  }

  TEST_CASE("lower order: full never exceeds dyadic for monotone psi") {
    std::mt19937_64 gen(31);
    for (int t = 0; t < 10; ++t) {
      std::vector<double> v(1 << 14);
      std::uniform_real_distribution<double> noise(0.9, 1.1);
      const double tau = 0.5 + (gen() % 100) / 40.0;
      for (std::size_t q = 1; q <= v.size(); ++q) v[q - 1] = std::pow(double(q), -tau) * noise(gen);
      for (std::size_t i = 1; i < v.size(); ++i) v[i] = std::min(v[i], v[i - 1]);
      const auto r = lower_order_diag(ApproxFunction::sampled_dense(v), 14);
      CHECK(r.lambda_full <= r.lambda_dyadic + 1e-12);
      CHECK_FALSE(r.exact.has_value());
    }
  }
}
