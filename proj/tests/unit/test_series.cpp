#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include "legcorner/errors.hpp"
#include "legcorner/series.hpp"
#include "oracles.hpp"

using namespace legcorner;

namespace {

ModeParams mode_nu(double nu) { return ModeParams{nu, nu, Branch::plus}; }

}  // namespace

TEST_SUITE("series") {

TEST_CASE("closed-form singular coefficients") {
  for (double m0 : {0.1, 1.0, 3.0}) {
    for (double nu : {0.5, 1.0, 2.7}) CHECK(singular_coeff_closed({m0, 0.0}, mode_nu(nu), 0) == 0.5);
  }
  CHECK(singular_coeff_closed({1.0, 0.0}, mode_nu(1.0), 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(singular_coeff_closed({1.0, 0.0}, mode_nu(1.0), 2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(singular_coeff_closed({1.0, 0.0}, mode_nu(0.0), 1), DomainError);
  CHECK_THROWS_AS(singular_coeff_closed({1.0, 0.0}, mode_nu(-0.5), 1), DomainError);
  CHECK_THROWS_AS(singular_coeff_closed({1.0, 0.0}, mode_nu(-1.0), 1), DomainError);
  CHECK_THROWS_AS(singular_coeff_closed({1.0, 0.01}, mode_nu(1.0), 1), UnsupportedConfiguration);
}

TEST_CASE("two-term recurrence") {
  const auto a = singular_coeffs_recurrence({1.0, 0.0}, mode_nu(1.0), 2);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 0.5);
  CHECK(a[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(a[2] == doctest::Approx(0.25).epsilon(1e-15));

  const auto z = singular_coeffs_recurrence({0.0, 0.0}, mode_nu(2.0), 5);
  CHECK(z == std::vector<double>{0.5, 0.0, 0.0, 0.0, 0.0, 0.0});

  const auto b = singular_coeffs_recurrence({1.0, 0.0}, mode_nu(2.0), 1);
  CHECK(b[1] == doctest::Approx(-0.6).epsilon(1e-15));
}

TEST_CASE("recurrence against 50-digit product formula") {
  for (double m0 : {0.1, 1.0, 5.0}) {
    for (double nu : {0.5, 1.0, 2.0, 3.0, 1.7}) {
      const auto a = singular_coeffs_recurrence({m0, 0.0}, mode_nu(nu), 50);
      const auto ref = oracle::singular_coeffs(m0, nu, 50);
      for (int k = 0; k <= 50; ++k) CHECK(a[k] == doctest::Approx(ref[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("three-term recurrence") {
  const auto b = singular_coeffs_full({1.0, 0.0}, mode_nu(1.0), 2);
  CHECK(b[0] == 0.5);
  CHECK(b[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(0.25).epsilon(1e-15));
  const auto c = singular_coeffs_full({1.0, 0.01}, mode_nu(1.0), 2);
  CHECK(c[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(0.2525).epsilon(1e-14));
  // the m1 = 0 reduction is exact
  for (double nu : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(singular_coeffs_full({0.7, 0.0}, mode_nu(nu), 40) == singular_coeffs_recurrence({0.7, 0.0}, mode_nu(nu), 40));
  }
}

TEST_CASE("regular-point coefficients") {
  const auto one = regular_coeffs({1.0, 0.01}, ModeParams::regular(1.0), 6);
  CHECK(one[0] == 1.0);
  CHECK(one[1] == 0.0);
  const ModeParams m = ModeParams::regular(0.9);
  CHECK(m.nu == doctest::Approx(1.0 + std::sqrt(0.19)));
  const auto a = regular_coeffs({1.0, 0.01}, m, 3);
  CHECK(a[1] == doctest::Approx(100.0 * m.nu * (m.nu - 1.0) / (2.0 * m.nu - 1.0)).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(33.44).epsilon(1e-3));
  CHECK_THROWS_AS(regular_coeffs({1.0, 0.0}, m, 3), DomainError);
  CHECK_THROWS_AS(ModeParams::regular(1.2), DomainError);
  CHECK_THROWS_AS(regular_coeffs({1.0, 0.01}, ModeParams{1.2, 1.0, Branch::plus}, 3), DomainError);
}

TEST_CASE("regular-point series radius sits at the ellipticity threshold") {
  for (PermeabilityParams p : {PermeabilityParams{0.1, 0.01}, PermeabilityParams{1.0, 0.01}}) {
    for (double g : {0.5, 0.9}) {
      const RadialSeries s = build_series(SeriesKind::regular, p, ModeParams::regular(g), 64);
      CHECK(s.radius == doctest::Approx(ellipticity_threshold(p)).epsilon(0.05));
    }
  }
}

TEST_CASE("degenerate coefficients") {
  const PermeabilityParams p{0.4, 0.0};
  const auto g1 = degenerate_coeffs(p, ModeParams::degenerate(1.0, 1.0), 5);
  CHECK(g1 == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const auto g2 = degenerate_coeffs(p, ModeParams::degenerate(2.0, 1.0), 5);
  CHECK(g2[1] == doctest::Approx(3.0 / (2.0 * 0.4)).epsilon(1e-15));
  for (int k = 2; k <= 5; ++k) CHECK(g2[k] == 0.0);
  const auto z = degenerate_coeffs(p, ModeParams::degenerate(1.0, 0.0), 5);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 1.0);
  for (int k = 2; k <= 5; ++k) CHECK(z[k] == 0.0);
  CHECK_THROWS_AS(ModeParams::degenerate(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(degenerate_coeffs({0.4, 0.1}, ModeParams::degenerate(1.0, 1.0), 3), UnsupportedConfiguration);
}

TEST_CASE("degenerate series terminate at gamma = n and match the polynomials") {
  for (double m0 : {0.3, 1.0}) {
    for (int n = 1; n <= 3; ++n) {
      const auto c = degenerate_coeffs({m0, 0.0}, ModeParams::degenerate(n, 1.0), 10);
      for (std::size_t k = n; k < c.size(); ++k) CHECK(std::abs(c[k]) <= 1e-14);
      const JacobiPolynomial poly = jacobi_polynomial(n, {m0, 0.0});
      for (int j = 0; j < n; ++j) CHECK(c[j] / c[n - 1] == doctest::Approx(poly.coeffs[j + 1]).epsilon(1e-14));
    }
  }
}

TEST_CASE("polynomials from the Rodrigues formula") {
  const PermeabilityParams p{1.0, 0.0};
  CHECK(jacobi_polynomial(1, p, 1.0).coeffs == std::vector<double>{0.0, 1.0});
  CHECK(jacobi_polynomial(2, p, 1.0).coeffs == std::vector<double>{0.0, 4.0, 6.0});
  CHECK(jacobi_polynomial(3, p, 1.0 / 6.0).coeffs == std::vector<double>{0.0, 3.0, 12.0, 10.0});
  // raw n = 3: 60 r^3 + 72 m0 r^2 + 18 m0^2 r
  const auto raw = jacobi_polynomial(3, {0.5, 0.0}, 1.0).coeffs;
  CHECK(raw[3] == doctest::Approx(60.0));
  CHECK(raw[2] == doctest::Approx(36.0));
  CHECK(raw[1] == doctest::Approx(4.5));
  // default normalization: unit leading coefficient
  for (int n = 1; n <= 6; ++n) {
    const JacobiPolynomial q = jacobi_polynomial(n, {0.7, 0.0});
    CHECK(q.coeffs.back() == doctest::Approx(1.0));
    CHECK(q.coeffs[0] == 0.0);
    const auto rod = oracle::rodrigues(n, 0.7);
    for (std::size_t j = 0; j < rod.size(); ++j) CHECK(q.coeffs[j] == doctest::Approx(rod[j] / rod.back()).epsilon(1e-13));
  }
  CHECK_THROWS_AS(jacobi_polynomial(2, {1.0, 0.01}), UnsupportedConfiguration);
  CHECK_THROWS_AS(jacobi_polynomial(0, p), DomainError);
}

TEST_CASE("polynomials solve the Jacobi-type equation") {
  // radial ODE with gamma = n
  for (int n = 1; n <= 5; ++n) {
    const PermeabilityParams p{0.6, 0.0};
    const RadialSeries s = polynomial_series(jacobi_polynomial(n, p));
    for (double r : {0.1, 0.5, 2.0}) {
      CHECK(std::abs(ode_residual(s, p, n, r)) <= 1e-10 * (1.0 + std::abs(eval_series(s, r).value)) / (r * r));
    }
  }
}

TEST_CASE("polynomials are orthogonal with weight 1/r on [-m0, 0]") {
  const double m0 = 0.8;
  std::vector<JacobiPolynomial> P;
  for (int n = 1; n <= 4; ++n) P.push_back(jacobi_polynomial(n, {m0, 0.0}));
  auto inner = [&](int a, int b) {
    auto f = [&](double r) { return P[a](r) * P[b](r) / r; };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, -m0, 0.0, 10, 1e-14);
  };
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const double scale = std::sqrt(std::abs(inner(a, a) * inner(b, b)));
      CHECK(std::abs(inner(a, b)) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("eigenpairs") {
  CHECK(jacobi_eigenvalue(1).lambda == -1.0);
  CHECK(jacobi_eigenvalue(2).lambda == -4.0);
  CHECK(jacobi_eigenvalue(10).lambda == -100.0);
  CHECK(jacobi_eigenvalue(10).gamma == 10.0);
}

TEST_CASE("indicial roots") {
  for (double g : {0.0, 0.3, 0.9, 1.0}) {
    const double n1 = ModeParams::regular(g, Branch::plus).nu;
    const double n2 = ModeParams::regular(g, Branch::minus).nu;
    CHECK(n1 + n2 == doctest::Approx(2.0));
    CHECK(n1 * n2 == doctest::Approx(g * g));
  }
  for (double g : {0.5, 3.0}) {
    CHECK(ModeParams::singular(g, Branch::plus).nu == g);
    CHECK(ModeParams::singular(-g, Branch::minus).nu == -g);
  }
}

TEST_CASE("building series") {
  const RadialSeries s = build_series(SeriesKind::singular_m0, {1.0, 0.0}, ModeParams::singular(3.0), 0);
  CHECK(s.nu == 3.0);
  CHECK(s.coeffs == std::vector<double>{0.5});
  CHECK(s.radius == 1.0);
  CHECK(s.variable == SeriesVariable::t);
  CHECK(build_series(SeriesKind::singular_m0, {0.1, 0.0}, ModeParams::singular(3.0)).radius == doctest::Approx(10.0));
  const RadialSeries d = build_series(SeriesKind::degenerate, {0.5, 0.0}, ModeParams::degenerate(1.0, 1.0), 8);
  CHECK(std::isinf(d.radius));
  CHECK(eval_series(d, 2.0).value == 2.0);
  // estimated radius of the three-term family at m1 = 0
  const RadialSeries f = build_series(SeriesKind::singular_full, {0.1, 0.0}, ModeParams::singular(2.0), 64);
  CHECK(f.radius == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("evaluation") {
  RadialSeries s = polynomial_series(1.0, {0.5, -1.0 / 3.0, 0.25}, SeriesVariable::t);
  CHECK(eval_series(s, 0.0).value == 0.0);
  const RadialSeries m = build_series(SeriesKind::singular_m0, {1.0, 0.0}, ModeParams::singular(1.0), 40);
  const double ref = oracle::singular_sum(1.0, 1.0, 0.5, 200);
  CHECK(eval_series(m, 0.5).value == doctest::Approx(ref).epsilon(1e-10));
  const SeriesValue tol = eval_series_to_tolerance(m, 0.5, 1e-12);
  CHECK(tol.value == doctest::Approx(ref).epsilon(1e-11));
  CHECK(tol.terms < 41);
  CHECK_THROWS_AS(eval_series(m, 0.96), OutOfRadius);
  CHECK_THROWS_AS(eval_series(m, 1.0), OutOfRadius);
  CHECK_NOTHROW(eval_series(m, 0.96, -1, EvalOptions{0.99}));
  CHECK_THROWS_AS(eval_series(m, 0.5, 50), DomainError);
  CHECK_THROWS_AS(eval_series(m, -0.1), DomainError);
}

TEST_CASE("truncation estimate bounds the actual error") {
  const RadialSeries m = build_series(SeriesKind::singular_m0, {1.0, 0.0}, ModeParams::singular(2.0), 64);
  for (double t : {0.1, 0.4, 0.7}) {
    for (int terms : {5, 10, 20}) {
      const SeriesValue v = eval_series(m, t, terms);
      const double ref = oracle::singular_sum(1.0, 2.0, t, 400);
      CHECK(std::abs(v.value - ref) <= v.trunc_error * 1.0000001 + 1e-15);
    }
  }
}

TEST_CASE("analytic derivatives against finite differences") {
  const RadialSeries m = build_series(SeriesKind::singular_full, {0.1, 0.01}, ModeParams::singular(3.0), 64);
  auto v = [&](double x) { return eval_series(m, x).value; };
  auto d1 = [&](double x) { return eval_series_derivatives(m, x).first; };
  for (double t : {0.5, 2.0, 5.0}) {
    const SeriesDerivatives d = eval_series_derivatives(m, t);
    CHECK(d.first == doctest::Approx(oracle::central(v, t, 1e-5 * t)).epsilon(1e-8));
    CHECK(d.second == doctest::Approx(oracle::central(d1, t, 1e-5 * t)).epsilon(1e-8));
  }
}

TEST_CASE("ODE residual") {
  const PermeabilityParams p{1.0, 0.0};
  const RadialSeries p1 = polynomial_series(jacobi_polynomial(1, p));
  for (double r : {0.2, 1.0, 3.0}) CHECK(std::abs(ode_residual(p1, p, 1.0, r)) <= 1e-15);

  const PermeabilityParams q{0.1, 0.0};
  RadialSeries s = build_series(SeriesKind::singular_m0, q, ModeParams::singular(3.0), 40);
  const double x = 0.3 / q.m0;
  CHECK(std::abs(ode_residual(s, q, 3.0, x)) < 1e-8);
  CHECK(std::abs(ode_residual(s, q, 3.0, x)) <= ode_residual_bound(s, q, 3.0, x));
  s.coeffs[2] *= 1.0 + 1e-3;
  CHECK(std::abs(ode_residual(s, q, 3.0, x)) > 1e-4);
  CHECK_THROWS_AS(ode_residual(s, q, 3.0, 9.6), OutOfRadius);
}

TEST_CASE("residual against the 50-digit operator") {
  const PermeabilityParams p{1.0, 0.01};
  for (SeriesKind kind : {SeriesKind::singular_full, SeriesKind::regular}) {
    const ModeParams mode = kind == SeriesKind::regular ? ModeParams::regular(0.5) : ModeParams::singular(2.0);
    const RadialSeries s = build_series(kind, p, mode, 64);
    for (double f : {0.2, 0.5, 0.8}) {
      const double x = f * s.radius;
      const double a = ode_residual(s, p, mode.gamma, x);
      const double b = oracle::ode_residual(s.coeffs, s.nu, s.variable, p.m0, p.m1, mode.gamma, x);
      CHECK(std::abs(a - b) <= ode_residual_bound(s, p, mode.gamma, x));
    }
  }
}

TEST_CASE("coefficient ratio tends to m0") {
  for (double m0 : {0.1, 1.0, 5.0}) {
    const auto a = singular_coeffs_recurrence({m0, 0.0}, mode_nu(2.0), 61);
    for (int k = 20; k <= 60; ++k) CHECK(std::abs(std::abs(a[k + 1] / a[k]) - m0) < 5.0 / k);
  }
}

TEST_CASE("Pochhammer") {
  CHECK(pochhammer(1.0L, 5) == 120.0L);
  CHECK(pochhammer(0.5L, 0) == 1.0L);
  CHECK(pochhammer(-2.0L, 3) == 0.0L);
}

}  // TEST_SUITE
