#include <cmath>
#include <limits>

#include <doctest.h>

#include "legcorner/errors.hpp"
#include "legcorner/mu_model.hpp"
#include "oracles.hpp"

using namespace legcorner;

TEST_SUITE("mu_model") {

TEST_CASE("permeability values") {
  CHECK(mu({0.1, 0.01}, 1.0) == doctest::Approx(1.09).epsilon(1e-15));
  CHECK(mu({1.0, 0.0}, 1.0) == 2.0);
  CHECK(mu({0.1, 0.01}, 1e12) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(susceptibility({0.1, 0.01}, 2.0) == doctest::Approx(0.05 - 0.0025));
  CHECK(magnetization({0.1, 0.01}, 2.0) == doctest::Approx(2.0 * (0.05 - 0.0025)));
}

TEST_CASE("permeability guards") {
  CHECK_THROWS_AS(mu({0.1, 0.01}, 0.0), DomainError);
  CHECK_THROWS_AS(mu({0.1, 0.01}, -1.0), DomainError);
  // 1 + 0.1/h - 0.01/h^2 <= 0 for small h
  CHECK_THROWS_AS(mu({0.1, 0.01}, 0.05), DomainError);
  CHECK_THROWS_AS(PermeabilityParams({-1.0, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(PermeabilityParams({0.1, std::numeric_limits<double>::quiet_NaN()}).validate(), DomainError);
}

TEST_CASE("coefficient a closed forms") {
  CHECK(coefficient_a({1.0, 0.0}, 1.0) == 0.5);
  CHECK(coefficient_a({1.0, 0.01}, 1.0) == doctest::Approx(1.01 / 1.99).epsilon(1e-15));
  CHECK(coefficient_a({3.0, 0.0}, 1e9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(coefficient_a_bar({1.0, 0.0}, 1.0) == 0.5);
  CHECK(coefficient_a_bar({0.1, 0.01}, 2.0) == doctest::Approx(1.04 / 1.16).epsilon(1e-15));
  CHECK(coefficient_a_bar({0.1, 0.01}, 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("a(r) with m1 = 0 is r / (r + m0)") {
  for (double m0 : {0.1, 1.0, 7.0}) {
    for (double r : {0.01, 0.5, 1.0, 3.0, 100.0}) {
      CHECK(coefficient_a({m0, 0.0}, r) == doctest::Approx(r / (r + m0)).epsilon(1e-15));
    }
  }
}

TEST_CASE("abar(1/r) equals a(r)") {
  for (PermeabilityParams p : {PermeabilityParams{0.1, 0.01}, PermeabilityParams{1.0, 0.0}, PermeabilityParams{2.0, 0.5}}) {
    for (double r = ellipticity_threshold(p) * 1.01 + 1e-3; r < 50.0; r *= 1.7) {
      CHECK(coefficient_a_bar(p, 1.0 / r) == doctest::Approx(coefficient_a(p, r)).epsilon(1e-14));
    }
  }
}

TEST_CASE("a(r) = 1 + r mu'(r) / mu(r) against finite differences of mu") {
  for (PermeabilityParams p : {PermeabilityParams{0.1, 0.01}, PermeabilityParams{1.0, 0.0}, PermeabilityParams{0.5, 0.2}}) {
    for (double r : {0.8, 1.0, 2.5, 10.0}) {
      const double h = 1e-4 * r;
      // fourth-order central difference
      const double d = (-mu(p, r + 2 * h) + 8 * mu(p, r + h) - 8 * mu(p, r - h) + mu(p, r - 2 * h)) / (12 * h);
      const double oracle = 1.0 + r * d / mu(p, r);
      CHECK(coefficient_a(p, r) == doctest::Approx(oracle).epsilon(1e-10));
      CHECK(mu_derivative(p, r) == doctest::Approx(d).epsilon(1e-10));
    }
  }
}

TEST_CASE("ellipticity threshold") {
  const PermeabilityParams p{0.1, 0.01};
  const double r0 = ellipticity_threshold(p);
  CHECK(r0 == doctest::Approx((-0.1 + std::sqrt(0.01 + 0.04)) / 2.0));
  CHECK_THROWS_AS(coefficient_a(p, 0.99 * r0), DomainError);
  CHECK(coefficient_a(p, 1.01 * r0) > 0.0);
  CHECK_THROWS_AS(coefficient_a_bar(p, 1.01 / r0), DomainError);
  CHECK(ellipticity_threshold({0.3, 0.0}) == 0.0);
}

}  // TEST_SUITE
