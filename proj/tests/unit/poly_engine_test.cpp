#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "../support/check.hpp"
#include "../support/oracles.hpp"
#include "prony/closed_forms.hpp"
#include "prony/poly.hpp"

using namespace prony;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Poly poly(std::vector<double> ascending) { return Poly(std::move(ascending)); }

}  // namespace

TEST_SUITE("poly_engine") {
  TEST_CASE("trimming drops negligible leading coefficients") {
    CHECK(poly({1.0, 2.0, 1e-16}).degree() == 1);
    CHECK(poly({1.0, 2.0, 1e-10}).degree() == 2);
    CHECK(poly({0.0, 0.0}).is_zero());
  }

  TEST_CASE("derivative_tower examples") {
    const auto t1 = derivative_tower(poly({-1.0, 0.0, 1.0}));
    REQUIRE(t1.size() == 3);
    CHECK(t1[1].coefficients() == std::vector<double>{0.0, 2.0});
    CHECK(t1[2].coefficients() == std::vector<double>{2.0});
    const auto t2 = derivative_tower(poly({5.0}));
    REQUIRE(t2.size() == 1);
    CHECK(t2[0].coefficients() == std::vector<double>{5.0});
    const auto t3 = derivative_tower(poly({-6.0, 11.0, -6.0, 1.0}));
    REQUIRE(t3.size() == 4);
    CHECK(t3[0].coefficients() == std::vector<double>{-6.0, 11.0, -6.0, 1.0});
    CHECK(t3[1].coefficients() == std::vector<double>{11.0, -12.0, 3.0});
    CHECK(t3[2].coefficients() == std::vector<double>{-12.0, 6.0});
    CHECK(t3[3].coefficients() == std::vector<double>{6.0});
  }

  TEST_CASE("budan_fourier_bound examples") {
    const Poly p1 = poly({-1.0, 0.0, 1.0});
    CHECK(sign_variation(p1, -2.0).count == 2);
    CHECK(sign_variation(p1, 0.0).count == 1);
    CHECK(budan_fourier_bound(p1, -2.0, 0.0) == 1);
    CHECK(budan_fourier_bound(poly({-6.0, 11.0, -6.0, 1.0}), 0.0, 4.0) == 3);
    // x^2 + 1 on (-10, 10]: nu(-10) = 2, nu(10) = 0, so the bound is 2,
    // overshooting the (zero) root count by an even amount.
    const Poly p2 = poly({1.0, 0.0, 1.0});
    CHECK(budan_fourier_bound(p2, -10.0, 10.0) == 2);
    CHECK(sturm_count(p2, -10.0, 10.0) == 0);
    CHECK(thrown_kind([&] { budan_fourier_bound(p2, 1.0, 1.0); }) == ErrorKind::kInvalidInput);
  }

  TEST_CASE("sign variations at infinity for monic polynomials") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 1 + trial % 8;
      const Poly p = Poly::monic(oracle::uniform_vector(rng, d, -5.0, 5.0));
      CHECK(sign_variation(p, kInf).count == 0);
      CHECK(sign_variation(p, -kInf).count == d);
      const double x = oracle::uniform_vector(rng, 1, -6.0, 6.0)[0];
      CHECK(sign_variation(p, x).count <= d);
    }
  }

  TEST_CASE("Budan-Fourier dominance against the exact multiplicity count") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
      const auto inst = oracle::random_budan_instance(rng, i);
      const Poly p(inst.coeffs);
      const int bound = budan_fourier_bound(p, inst.a, inst.b);
      const int exact = oracle::roots_with_multiplicity(oracle::from_doubles(inst.coeffs),
                                                        oracle::finite_or_none(inst.a),
                                                        oracle::finite_or_none(inst.b));
      CHECK(bound >= exact);
      CHECK((bound - exact) % 2 == 0);
    }
  }

  TEST_CASE("sturm_count examples") {
    CHECK(sturm_count(poly({-1.0, 0.0, 1.0}), -2.0, 0.0) == 1);
    CHECK(sturm_count(poly({1.0, 0.0, 1.0}), -kInf, kInf) == 0);
    CHECK(sturm_count(poly({-6.0, 11.0, -6.0, 1.0}), -kInf, kInf) == 3);
    CHECK(sturm_count(poly({-6.0, 11.0, -6.0, 1.0}), 1.5, 2.5) == 1);
    // (x-1)^2 (x+1): distinct roots only
    CHECK(sturm_count(poly({1.0, -1.0, -1.0, 1.0}), -kInf, kInf) == 2);
  }

  TEST_CASE("sturm_count matches the exact oracle on squarefree polynomials") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      auto inst = oracle::random_budan_instance(rng, 3 * i);  // family 0
      const oracle::RPoly q = oracle::from_doubles(inst.coeffs);
      const auto factors = oracle::squarefree_factorization(q);
      if (factors.size() != 1 || factors[0].first != 1) continue;
      const int exact = oracle::sturm_distinct(q, oracle::finite_or_none(inst.a), oracle::finite_or_none(inst.b));
      CHECK(sturm_count(Poly(inst.coeffs), inst.a, inst.b) == exact);
    }
  }

  TEST_CASE("is_hyperbolic examples") {
    CHECK(is_hyperbolic(std::vector<double>{0.0, -1.0}));
    CHECK_FALSE(is_hyperbolic(std::vector<double>{0.0, 1.0}));
    CHECK_FALSE(is_hyperbolic(std::vector<double>{-2.0, 1.0}));
    CHECK(is_hyperbolic(std::vector<double>{-6.0, 11.0, -6.0}));
    CHECK_FALSE(is_hyperbolic(std::vector<double>{}));
    CHECK_FALSE(is_hyperbolic(std::vector<double>{NAN, 1.0}));
  }

  TEST_CASE("real_roots examples") {
    const auto r1 = real_roots(poly({-1.0, 0.0, 1.0}));
    REQUIRE(r1.size() == 2);
    CHECK(std::abs(r1[0] + 1.0) < 1e-12);
    CHECK(std::abs(r1[1] - 1.0) < 1e-12);
    const auto r2 = real_roots(poly({-6.0, 11.0, -6.0, 1.0}));
    REQUIRE(r2.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r2[i] - (i + 1)) <= 1e-12 * (2.0 + i));
    CHECK(real_roots(poly({1.0, 0.0, 1.0})).empty());
    CHECK(real_roots(poly({3.0})).empty());
  }

  TEST_CASE("real_roots residuals and counts on random squarefree polynomials") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 300; ++trial) {
      const int d = 1 + trial % 8;
      std::vector<double> c = oracle::uniform_vector(rng, d + 1, -5.0, 5.0);
      const Poly p(c);
      const auto roots = real_roots(p);
      CHECK(static_cast<int>(roots.size()) == sturm_count(p, -kInf, kInf));
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const double r = roots[i];
        CHECK(std::abs(p(r)) <= 1e-9 * p.max_abs_coefficient() * std::pow(1.0 + std::abs(r), d));
        if (i > 0) CHECK(roots[i - 1] <= r);
      }
    }
  }

  TEST_CASE("real_roots accuracy on well separated roots") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 1 + trial % 6;
      const Signal s = oracle::random_signal(rng, d, 0.2, 1.0, 2.0);
      const auto roots = real_roots(elementary_symmetric(s.nodes).polynomial());
      REQUIRE(static_cast<int>(roots.size()) == d);
      for (int i = 0; i < d; ++i) CHECK(std::abs(roots[i] - s.nodes[i]) <= 1e-10 * (1.0 + std::abs(s.nodes[i])));
    }
  }

  TEST_CASE("discriminant examples") {
    CHECK(discriminant(poly({-1.0, 0.0, 1.0})) == doctest::Approx(4.0));
    CHECK(discriminant(poly({0.0, -1.0, 0.0, 1.0})) == doctest::Approx(4.0));
    CHECK(discriminant_cubic_paper({0.0, -1.0, 0.0}) == doctest::Approx(-4.0));
    CHECK(std::abs(discriminant(poly({1.0, -2.0, 1.0}))) < 1e-14);
  }

  TEST_CASE("discriminant convention bridge") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto s2 = oracle::uniform_vector(rng, 2, -3.0, 3.0);
      const double disc2 = discriminant(Poly::monic(s2));
      const double paper2 = s2[0] * s2[0] - 4.0 * s2[1];
      CHECK(std::abs(disc2 - paper2) <= 1e-10 * (s2[0] * s2[0] + 4.0 * std::abs(s2[1])));
      const auto s3 = oracle::uniform_vector(rng, 3, -3.0, 3.0);
      const double disc3 = discriminant(Poly::monic(s3));
      const std::array<double, 3> a3{s3[0], s3[1], s3[2]};
      CHECK(std::abs(disc3 + discriminant_cubic_paper(a3)) <= 1e-10 * discriminant_cubic_paper_scale(a3));
      // sign criterion for real distinct roots at d = 2, 3
      CHECK((disc2 > 0) == is_hyperbolic(s2));
      CHECK((disc3 > 0) == is_hyperbolic(s3));
    }
  }
}
