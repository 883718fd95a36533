#include <doctest.h>

#include <cmath>
#include <random>

#include "limsup/errors.hpp"
#include "limsup/formulas.hpp"
#include "oracles.hpp"

using namespace limsup;

TEST_SUITE("formulas") {
  TEST_CASE("jb") {
    CHECK(jb_dim(3) == 0.5);
    CHECK(jb_dim(2) == doctest::Approx(2.0 / 3));
    CHECK(jb_dim(1 + 1e-9) == doctest::Approx(1.0));
    CHECK_THROWS_AS(jb_dim(1), DomainError);
  }

  TEST_CASE("levesley") {
    std::string branch;
    CHECK(levesley_dim(1, 1, 3, &branch) == doctest::Approx(jb_dim(3)));
    CHECK(branch == "power");
    CHECK(levesley_dim(2, 2, 0.4, &branch) == 4);
    CHECK(branch == "full");
    CHECK(levesley_dim(3, 1, 4) == doctest::Approx(2.8));
    CHECK(levesley_dim(3, 2, 1.5) == doctest::Approx(6));
    CHECK(levesley_dim(3, 2, 1.5 + 1e-12) == doctest::Approx(6));
    CHECK_THROWS_AS(levesley_dim(1, 1, -0.1), DomainError);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> ut(1.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
      const double t = std::nextafter(ut(gen), 51.0);
      CHECK(levesley_dim(1, 1, t) == jb_dim(t));
    }
  }

  TEST_CASE("non-monotone bounds") {
    const auto a = levesley_bounds_nonmonotone(3, 1, 4);
    CHECK(a.lower == doctest::Approx(2.6));
    CHECK(a.upper == doctest::Approx(2.8));
    const auto b = levesley_bounds_nonmonotone(3, 2, 2);
    CHECK(b.lower == doctest::Approx(4 + 4.0 / 3));
    CHECK(b.upper == doctest::Approx(4 + 5.0 / 3));
    for (double l : {4.5, 7.0, 20.0}) {
      const auto c = levesley_bounds_nonmonotone(4, 1, l);
      CHECK(c.upper - c.lower == doctest::Approx(1 / (l + 1)));
    }
    CHECK_THROWS_AS(levesley_bounds_nonmonotone(3, 1, 3), DomainError);
    CHECK_THROWS_AS(levesley_bounds_nonmonotone(2, 1, 5), DomainError);
  }

  TEST_CASE("counterexample parameters") {
    const auto p = counterexample_params(3, 1, 4, 2.7);
    CHECK(p.beta == doctest::Approx(33.0 / 7).epsilon(1e-14));
    CHECK(p.gamma == doctest::Approx(-4).epsilon(1e-12));
    CHECK(2 / p.gamma == doctest::Approx(3 - 5 * 0.7).epsilon(1e-12));
    CHECK(p.on_set.enumerate(300) == std::vector<std::uint64_t>{1, 16, 81, 256});
    CHECK(p.beta > 4);

    const auto q = counterexample_params(1, 1, 3, 0.45);
    CHECK(q.beta == doctest::Approx(31.0 / 9));
    CHECK(q.gamma == doctest::Approx(-2.5));

    CHECK_THROWS_AS(counterexample_params(3, 1, 4, 2.9), DomainError);
    CHECK_THROWS_AS(counterexample_params(3, 1, 2, 2.7), DomainError);

    const auto psi = counterexample_psi(3, 1, 4, 2.7);
    CHECK(psi(16) == doctest::Approx(std::pow(16.0, -4)));
    CHECK(psi(2) == doctest::Approx(std::pow(2.0, -33.0 / 7)));
    CHECK(psi.monotonicity() == Monotonicity::NonMonotone);
  }

  TEST_CASE("rynne") {
    CHECK(rynne_dim(1, {3}, 1).value == doctest::Approx(0.5));
    const auto t = rynne_dim(2, {1, 1}, 1);
    CHECK(t.value == doctest::Approx(1.5));
    CHECK(t.argmin == std::vector<int>{1, 2});
    CHECK(rynne_dim(1, {1}, 0).value == doctest::Approx(0.5));
    const auto w = rynne_dim(2, {1, 2}, 1);
    CHECK(w.value == doctest::Approx(4.0 / 3));
    CHECK(w.argmin == std::vector<int>{2});
    CHECK_THROWS_AS(rynne_dim(2, {0.2, 0.3}, 1), DomainError);
    CHECK_THROWS_AS(rynne_dim(2, {2, 1}, 1), DomainError);
  }

  TEST_CASE("rynne matches the direct minimisation") {
    std::mt19937_64 gen(2);
    for (int i = 0; i < 1000; ++i) {
      const int k = 1 + int(gen() % 5);
      std::uniform_real_distribution<double> ut(1.0 / k, 6.0);
      std::vector<double> tau(k);
      for (auto& v : tau) v = ut(gen);
      std::sort(tau.begin(), tau.end());
      CHECK(rynne_dim(k, tau, 1).value == doctest::Approx(oracle::direct_min_expression(tau)).epsilon(1e-13));
    }
  }

  TEST_CASE("wwx and slicing") {
    for (int k = 1; k <= 8; ++k) CHECK(wwx_exponent(k, std::vector<double>(k, 1.0)).value == k);
    const auto a = wwx_exponent(2, {1, 2});
    CHECK(a.value == 1.5);
    CHECK(a.argmin == std::vector<int>{2});
    CHECK(wwx_exponent(1, {2}).value == 0.5);
    CHECK(slicing_bounds(1, 1, {2}).value == 0.5);
    CHECK(slicing_bounds(3, 1, {2}).value == 2.5);
    CHECK(slicing_bounds(3, 2, {1, 2}).value == 2.5);
    CHECK(slicing_bounds(4, 4, {1, 1, 1, 1}).value == 4);
    CHECK_THROWS_AS(slicing_bounds(2, 3, {1, 1, 1}), DomainError);
    CHECK_THROWS_AS(wwx_exponent(2, {2, 1}), DomainError);
    CHECK_THROWS_AS(wwx_exponent(2, {0.5, 1}), DomainError);
  }

  TEST_CASE("rectangle bound") {
    CHECK(rect_upper_bound(2, {1, 1}, {1, 2}).value == 1.5);
    CHECK(rect_upper_bound(2, {1, 2}, {1, 1}).value == 2);
    CHECK(rect_upper_bound(1, {1}, {3}).value == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(rect_upper_bound(2, {3, 1}, {1, 1}), DomainError);
  }

  TEST_CASE("cross consistency on random exponent vectors") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> ua(1.0, 5.0);
    for (int i = 0; i < 500; ++i) {
      const int k = 1 + int(gen() % 6);
      const int k0 = 1 + int(gen() % k);
      std::vector<double> a(k0);
      for (auto& v : a) v = ua(gen);
      std::sort(a.begin(), a.end());
      CHECK(slicing_bounds(k, k0, a).value == doctest::Approx(wwx_exponent(k0, a).value + (k - k0)).epsilon(1e-14));
      std::vector<double> full(k, 1.0);
      std::copy(a.begin(), a.end(), full.end() - k0);
      CHECK(rect_upper_bound(k, std::vector<double>(k, 1.0), full).value ==
            doctest::Approx(wwx_exponent(k, full).value).epsilon(1e-14));
      CHECK(slicing_bounds(k, k0, a).value <= rect_upper_bound(k, std::vector<double>(k, 1.0), full).value + 1e-12);
    }
  }

  TEST_CASE("similarity dimension") {
    CHECK(similarity_dim({1.0 / 3, 1.0 / 3}) == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(similarity_dim({0.5, 0.5}) == doctest::Approx(1).epsilon(1e-12));
    CHECK(similarity_dim({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1).epsilon(1e-12));
    CHECK(similarity_dim({0.5}) == 0);
    CHECK_THROWS_AS(similarity_dim({1.5, 0.2}), DomainError);
  }

  TEST_CASE("singular value function") {
    CHECK(singular_value_fn({0.5, 0.25}, 1.5) == doctest::Approx(0.25));
    CHECK(singular_value_fn({0.5, 0.25}, 1) == doctest::Approx(0.5));
    for (double t : {0.3, 1.0, 2.0, 2.7}) CHECK(singular_value_fn({0.4, 0.4, 0.4}, t) == doctest::Approx(std::pow(0.4, t)));
    CHECK(singular_value_fn({0.5, 0.25}, 3) == doctest::Approx(std::pow(0.125, 1.5)));
    CHECK_THROWS_AS(validate_linear_map({{0.25, 0.5}}), DomainError);
    CHECK_THROWS_AS(validate_linear_map({{1.0, 0.5}}), DomainError);
  }

  TEST_CASE("singular value function is continuous at integers") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> us(0.01, 0.99);
    for (int i = 0; i < 1000; ++i) {
      const int k = 1 + int(gen() % 4);
      std::vector<double> s(k);
      for (auto& v : s) v = us(gen);
      std::sort(s.rbegin(), s.rend());
      for (int n = 1; n <= k; ++n) {
        const double lo = singular_value_fn(s, std::nextafter(double(n), 0.0));
        const double hi = singular_value_fn(s, double(n));
        CHECK(std::abs(lo - hi) < 1e-12);
      }
    }
  }

  TEST_CASE("affinity dimension") {
    CHECK(affinity_dim({{{0.5, 0.5}}, {{0.5, 0.5}}}) == doctest::Approx(1).epsilon(1e-9));
    CHECK(affinity_dim({{{0.5, 0.25}}, {{0.5, 0.25}}}) == doctest::Approx(1).epsilon(1e-9));
    const double closed = 1 + std::log(1.5) / std::log(3.0);
    CHECK(std::abs(affinity_dim({{{0.5, 1.0 / 3}}, {{0.5, 1.0 / 3}}, {{0.5, 1.0 / 3}}}) - closed) < 1e-6);
    CHECK_THROWS_AS(affinity_dim({}), DomainError);
    for (double c : {0.2, 0.3, 0.45}) {
      const std::vector<LinearMapSpec> maps = {{{c, c}}, {{c, c}}, {{c, c}}};
      CHECK(std::abs(affinity_dim(maps) - similarity_dim({c, c, c})) < 1e-9);
    }
  }

  TEST_CASE("random and affine covers") {
    CHECK(random_cover_dim(0.5) == 0.5);
    CHECK(random_cover_dim(2) == 1);
    CHECK(random_cover_dim(1) == 1);
    CHECK(affine_cover_dim({RadiiRule::power(2)}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(affine_cover_dim({RadiiRule::power(1), RadiiRule::power(2)}) == doctest::Approx(1).epsilon(1e-9));
    CHECK(affine_cover_dim({RadiiRule::power(2), RadiiRule::power(2)}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(affine_cover_dim({RadiiRule::sampled({0.5, 0.25})}), UnsupportedError);
  }

  TEST_CASE("cantor critical exponent") {
    const double d = std::log(2.0) / std::log(3.0);
    CHECK(cantor_critical(2) == doctest::Approx(0.3154648768).epsilon(1e-10));
    CHECK(cantor_critical(1) == doctest::Approx(d));
    CHECK(cantor_critical(4) == doctest::Approx(d / 4));
    CHECK_THROWS_AS(cantor_critical(0), DomainError);
  }
}
