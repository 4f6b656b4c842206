#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using legcorner::HodographSolution;
using legcorner::OmegaEval;
using legcorner::Vec2;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

big rising(big x, int n) {
  big p = 1;
  for (int i = 0; i < n; ++i) p *= x + i;
  return p;
}

big factorial(int n) {
  big p = 1;
  for (int i = 2; i <= n; ++i) p *= i;
  return p;
}

big singular_coeff(const big& m0, const big& nu, int k) {
  const big top = rising(nu, k + 1);
  const big sign = (k % 2 == 0) ? 1 : -1;
  return sign * pow(m0, k) * top * top / (factorial(k) * rising(2 * nu, k + 1) * (nu + k));
}

}  // namespace

std::vector<double> singular_coeffs(double m0, double nu, int kmax) {
  std::vector<double> out;
  for (int k = 0; k <= kmax; ++k) out.push_back(static_cast<double>(singular_coeff(m0, nu, k)));
  return out;
}

double singular_sum(double m0, double nu, double t, int terms) {
  const big bm0 = m0, bnu = nu, bt = t;
  big sum = 0;
  big tk = 1;
  for (int k = 0; k < terms; ++k) {
    sum += singular_coeff(bm0, bnu, k) * tk;
    tk *= bt;
  }
  return static_cast<double>(pow(bt, bnu) * sum);
}

double ode_residual(const std::vector<double>& coeffs, double nu, legcorner::SeriesVariable variable,
                    double m0, double m1, double gamma, double x) {
  const big bx = x, bnu = nu, bm0 = m0, bm1 = m1, g2 = big(gamma) * gamma;
  big v = 0, d1 = 0, d2 = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const big e = bnu + static_cast<int>(k);
    const big c = coeffs[k];
    const big p = pow(bx, e - 2);
    v += c * p * bx * bx;
    d1 += c * e * p * bx;
    d2 += c * e * (e - 1) * p;
  }
  big res;
  if (variable == legcorner::SeriesVariable::r) {
    const big a = (bx * bx + bm1) / (bx * bx + bm0 * bx - bm1);
    res = d2 + a * (d1 / bx - g2 * v / (bx * bx));
  } else {
    const big ab = (1 + bm1 * bx * bx) / (1 + bm0 * bx - bm1 * bx * bx);
    res = d2 + (2 - ab) / bx * d1 - g2 * ab / (bx * bx) * v;
  }
  return static_cast<double>(res);
}

std::vector<double> rodrigues(int n, double m0) {
  // r^(n-1) (r + m0)^n = sum_j C(n, j) m0^(n-j) r^(n-1+j)
  const int deg = 2 * n - 1;
  std::vector<big> c(deg + 1, big(0));
  for (int j = 0; j <= n; ++j) {
    big binom = 1;
    for (int i = 0; i < j; ++i) binom = binom * (n - i) / (i + 1);
    c[n - 1 + j] = binom * pow(big(m0), n - j);
  }
  for (int d = 0; d < n; ++d) {
    std::vector<big> next(c.size() > 1 ? c.size() - 1 : 1, big(0));
    for (std::size_t p = 1; p < c.size(); ++p) next[p - 1] = c[p] * static_cast<int>(p);
    c = std::move(next);
  }
  // times 1/rho = r
  std::vector<double> out{0.0};
  for (const big& v : c) out.push_back(static_cast<double>(v));
  return out;
}

Vec2 grid_inverse(const HodographSolution& sol, double x, double y, double rho_lo, double rho_hi) {
  auto cost = [&](double lr, double phi) {
    const double rho = std::exp(lr);
    try {
      const OmegaEval e = legcorner::eval_omega(sol, rho * std::cos(phi), rho * std::sin(phi));
      return std::hypot(e.grad.x - x, e.grad.y - y);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  double a0 = std::log(rho_lo), a1 = std::log(rho_hi);
  double b0 = sol.window.lo, b1 = sol.window.hi;
  double best_a = a0, best_b = b0, best = std::numeric_limits<double>::infinity();
  int n = 241;
  for (int level = 0; level < 60; ++level) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double a = a0 + (a1 - a0) * i / (n - 1);
        const double b = b0 + (b1 - b0) * j / (n - 1);
        const double c = cost(a, b);
        if (c < best) {
          best = c;
          best_a = a;
          best_b = b;
        }
      }
    }
    const double da = (a1 - a0) / (n - 1) * 4.0, db = (b1 - b0) / (n - 1) * 4.0;
    a0 = best_a - da;
    a1 = best_a + da;
    b0 = std::max(sol.window.lo, best_b - db);
    b1 = std::min(sol.window.hi, best_b + db);
    n = 17;
    if (best < 1e-15 || a1 - a0 < 1e-15) break;
  }
  const double rho = std::exp(best_a);
  return {rho * std::cos(best_b), rho * std::sin(best_b)};
}

OmegaEval fd_omega(const HodographSolution& sol, double xi, double eta, double h) {
  auto w = [&](double a, double b) { return legcorner::eval_omega(sol, a, b).omega; };
  auto g = [&](double a, double b) { return legcorner::eval_omega(sol, a, b).grad; };
  OmegaEval e;
  e.omega = w(xi, eta);
  e.grad.x = (w(xi + h, eta) - w(xi - h, eta)) / (2 * h);
  e.grad.y = (w(xi, eta + h) - w(xi, eta - h)) / (2 * h);
  e.hess.xx = (g(xi + h, eta).x - g(xi - h, eta).x) / (2 * h);
  e.hess.xy = (g(xi, eta + h).x - g(xi, eta - h).x) / (2 * h);
  e.hess.yy = (g(xi, eta + h).y - g(xi, eta - h).y) / (2 * h);
  return e;
}

double central(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace oracle
