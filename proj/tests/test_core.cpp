#include <doctest.h>

#include <cmath>
#include <random>

#include "limsup/core.hpp"
#include "limsup/errors.hpp"
#include "limsup/number_theory.hpp"
#include "limsup/rng.hpp"
#include "oracles.hpp"

using namespace limsup;

TEST_SUITE("core") {
  TEST_CASE("dimension function evaluation") {
    CHECK(eval_dimension_function(DimensionFunction::power_log(0.5, 0), 0.04) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(eval_dimension_function(DimensionFunction::power(1), 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    // log factor is exactly 1 at r = 1/e
    const double r = std::exp(-1.0);
    CHECK(eval_dimension_function(DimensionFunction::power_log(2, 1), r) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    // clamped above 1/e
    CHECK(DimensionFunction::power_log(1, 3)(0.6) == doctest::Approx(0.6));
    CHECK(DimensionFunction::power_log(1, 2)(0.01) == doctest::Approx(0.01 * std::pow(std::log(100.0), 2)));
  }

  TEST_CASE("dimension function errors") {
    const auto f = DimensionFunction::power(1);
    CHECK_THROWS_AS(f(0.0), DomainError);
    CHECK_THROWS_AS(f(-1.0), DomainError);
    CHECK_THROWS_AS(DimensionFunction::power_log(0.0), DomainError);
    const auto t = DimensionFunction::sampled({{0.1, 0.01}, {0.2, 0.04}, {0.4, 0.16}});
    CHECK(t(0.2) == doctest::Approx(0.04));
    CHECK_THROWS_AS(t(0.05), RangeError);
    CHECK_THROWS_AS(t(0.5), RangeError);
    CHECK_THROWS_AS(DimensionFunction::sampled({{0.1, 0.5}, {0.2, 0.1}}), DomainError);
  }

  TEST_CASE("power log is strictly increasing below 1/e") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> us(0.05, 5.0), ur(1e-6, std::exp(-1.0));
    for (int i = 0; i < 1000; ++i) {
      const double s = us(gen);
      double a = ur(gen), b = ur(gen);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const auto f = DimensionFunction::power(s);
      CHECK(f(a) < f(b));
    }
  }

  TEST_CASE("approximating functions") {
    CHECK(eval_approx_function(ApproxFunction::power(2), 10) == doctest::Approx(0.01));
    const auto psi = ApproxFunction::piecewise(4, 33.0 / 7, IndexFamily::polynomial_ceil(4));
    CHECK(psi(16) == doctest::Approx(std::pow(16.0, -4)).epsilon(1e-14));
    CHECK(psi(17) == doctest::Approx(std::pow(17.0, -33.0 / 7)).epsilon(1e-14));
    CHECK(ApproxFunction::power(1.5).monotonicity() == Monotonicity::NonIncreasing);
    CHECK(psi.monotonicity() == Monotonicity::NonMonotone);
    CHECK_THROWS_AS(ApproxFunction::power(2)(0), DomainError);
    const auto table = ApproxFunction::sampled({{1, 1.0}, {3, 0.5}});
    CHECK(table(3) == 0.5);
    CHECK_THROWS_AS(table(2), RangeError);
  }

  TEST_CASE("piecewise envelope") {
    const auto psi = ApproxFunction::piecewise(2, 3, IndexFamily::geometric(2));
    for (std::uint64_t q = 1; q <= 2000; ++q) {
      const double v = psi(q);
      CHECK(v <= std::pow(double(q), -2.0) * (1 + 1e-12));
      CHECK(v >= std::pow(double(q), -3.0) * (1 - 1e-12));
    }
  }

  TEST_CASE("index families enumerate in order and agree with membership") {
    const std::vector<IndexFamily> fams = {IndexFamily::all_naturals(), IndexFamily::geometric(3),
                                           IndexFamily::polynomial_ceil(4), IndexFamily::polynomial_ceil(1.5),
                                           IndexFamily::explicit_finite({2, 5, 9})};
    for (const auto& fam : fams) {
      const auto e = fam.enumerate(500);
      for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1] < e[i]);
      std::size_t j = 0;
      for (std::uint64_t q = 1; q <= 500; ++q) {
        const bool in = j < e.size() && e[j] == q;
        CHECK(fam.contains(q) == in);
        if (in) ++j;
      }
    }
    CHECK(IndexFamily::geometric(3).enumerate(100) == std::vector<std::uint64_t>{1, 3, 9, 27, 81});
    CHECK(IndexFamily::polynomial_ceil(4).enumerate(300) == std::vector<std::uint64_t>{1, 16, 81, 256});
    CHECK(IndexFamily::all_naturals().is_cofinite());
    CHECK_FALSE(IndexFamily::geometric(2).is_cofinite());
    CHECK(IndexFamily::explicit_finite({1, 2}).is_finite());
    CHECK_THROWS_AS(IndexFamily::geometric(1), DomainError);
    CHECK_THROWS_AS(IndexFamily::polynomial_ceil(0), DomainError);
  }

  TEST_CASE("radii rules") {
    CHECK(RadiiRule::power(2)(10) == doctest::Approx(0.01));
    CHECK(RadiiRule::power(1, 0.5)(4) == doctest::Approx(0.125));
    CHECK(RadiiRule::geometric(0.5)(3) == doctest::Approx(0.125));
    const auto s = RadiiRule::sampled({0.5, 0.25});
    CHECK(s.max_index() == 2);
    CHECK_THROWS_AS(s(3), RangeError);
  }

  TEST_CASE("hypothesis validation examples") {
    CHECK_FALSE(validate_hypotheses(DimensionFunction::power(0.5), 1, 1).g_valid);
    const auto a = validate_hypotheses(DimensionFunction::power(1.5), 2, 1);
    CHECK(a.g_valid);
    CHECK(a.scaled_monotone);
    const auto b = validate_hypotheses(DimensionFunction::power(2), 2, 0);
    CHECK(b.g_valid);
    CHECK(b.scaled_monotone);
    CHECK(b.scaled_direction == Direction::Constant);
  }

  TEST_CASE("g valid iff s > l for pure powers") {
    for (int l = 0; l <= 8; ++l)
      for (int s = 1; s <= 8; ++s) {
        const auto rep = validate_hypotheses(DimensionFunction::power(s), std::max(l + 1, s), l);
        CHECK(rep.g_valid == (s > l));
      }
  }

  TEST_CASE("g at the boundary needs a negative log exponent") {
    CHECK(validate_hypotheses(DimensionFunction::power_log(1, -1), 2, 1).g_valid);
    CHECK_FALSE(validate_hypotheses(DimensionFunction::power_log(1, 1), 2, 1).g_valid);
  }

  TEST_CASE("totient sieve matches gcd count") {
    const auto t = totient_table(2000);
    for (std::uint64_t q = 1; q <= 2000; ++q) {
      CHECK(t[q] == oracle::gcd_totient(q));
      CHECK(totient(q) == t[q]);
    }
  }

  TEST_CASE("counter rng is a pure function of its inputs") {
    const CounterRng a(42), b(42), c(43);
    CHECK(a.bits(7) == b.bits(7));
    CHECK(a.bits(7) != c.bits(7));
    CHECK(a.split(3).bits(0) == b.split(3).bits(0));
    CHECK(a.split(3).bits(0) != a.split(4).bits(0));
    double mean = 0;
    for (int i = 0; i < 100000; ++i) {
      const double u = a.uniform(i);
      CHECK_UNARY(u >= 0.0);
      CHECK_UNARY(u < 1.0);
      mean += u;
    }
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
  }
}
