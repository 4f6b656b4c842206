#include "legcorner/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "legcorner/errors.hpp"

namespace legcorner {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool nearly(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }

void require_kmax(int kmax) {
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
}

void require_m1_zero(const PermeabilityParams& params, const char* what) {
  if (params.m1 != 0.0) {
    throw UnsupportedConfiguration(std::string(what) + " requires m1 == 0");
  }
}

void require_singular_mode(const ModeParams& mode) {
  const double expected = mode.branch == Branch::plus ? std::abs(mode.gamma) : -std::abs(mode.gamma);
  if (!nearly(mode.nu, expected)) {
    throw DomainError("singular family requires nu = +-|gamma| (gamma=" +
                      std::to_string(mode.gamma) + ", nu=" + std::to_string(mode.nu) + ")");
  }
}

void require_nonzero(double denom, const char* what) {
  if (std::abs(denom) < 1e-14) {
    throw DomainError(std::string(what) + ": recurrence denominator vanishes");
  }
}

void require_finite(const std::vector<double>& c, const char* what) {
  for (double v : c) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": coefficient overflow");
  }
}

// Coefficients of p(r) = r^(n-1) (r + m0)^n, index = power.
std::vector<double> rodrigues_kernel(int n, double m0) {
  std::vector<double> c(2 * n, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    // C(n, j) r^j m0^(n-j), shifted by r^(n-1)
    c[j + n - 1] = binom * std::pow(m0, n - j);
    binom = binom * (n - j) / (j + 1);
  }
  return c;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
  return d;
}

struct HornerSums {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;  // P, P', P''
};

HornerSums horner(const std::vector<double>& c, std::size_t terms, double x, bool absolute) {
  HornerSums h;
  if (terms == 0) return h;
  auto coef = [&](std::size_t k) { return absolute ? std::abs(c[k]) : c[k]; };
  double p0 = coef(terms - 1), p1 = 0.0, p2 = 0.0;
  for (std::size_t k = terms - 1; k-- > 0;) {
    p2 = p2 * x + p1;
    p1 = p1 * x + p0;
    p0 = p0 * x + coef(k);
  }
  h.s0 = p0;
  h.s1 = p1;
  h.s2 = 2.0 * p2;
  return h;
}

// Geometric bound on sum_{k >= terms} |c_k| x^k, seeded by the largest of
// the last three included terms. Zero for an exhausted finite series.
double tail_bound(const RadialSeries& s, std::size_t terms, double x) {
  if (terms == 0) return kInfiniteRadius;
  const bool exhausted = terms >= s.coeffs.size();
  if (std::isinf(s.radius) && exhausted) return 0.0;
  if (std::isinf(s.radius)) {
    double rest = 0.0;
    for (std::size_t k = terms; k < s.coeffs.size(); ++k) rest += std::abs(s.coeffs[k]) * std::pow(x, k);
    return rest;
  }
  double q = x / s.radius;
  const std::size_t last = terms - 1;
  if (last >= 1 && s.coeffs[last - 1] != 0.0 && s.coeffs[last] != 0.0) {
    q = std::max(q, x * std::abs(s.coeffs[last] / s.coeffs[last - 1]));
  }
  if (q >= 1.0) return kInfiniteRadius;
  double seed = 0.0;
  const std::size_t first = last >= 2 ? last - 2 : 0;
  for (std::size_t j = first; j <= last; ++j) {
    seed = std::max(seed, std::abs(s.coeffs[j]) * std::pow(x, static_cast<double>(j)) *
                              std::pow(q, static_cast<double>(last - j)));
  }
  return seed * q / (1.0 - q);
}

void check_argument(const RadialSeries& s, double x, const EvalOptions& options) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("series argument must be finite and >= 0");
  if (std::isfinite(s.radius) && x > options.safety * s.radius) {
    throw OutOfRadius("series argument " + std::to_string(x) + " exceeds " +
                      std::to_string(options.safety) + " x radius " + std::to_string(s.radius));
  }
}

struct OdeCoefficients {
  double p = 0.0;  // multiplies f'
  double q = 0.0;  // multiplies f
};

OdeCoefficients ode_coefficients(const RadialSeries& s, const PermeabilityParams& params,
                                 double gamma, double x) {
  if ((s.kind == SeriesKind::singular_m0 || s.kind == SeriesKind::degenerate) && params.m1 != 0.0) {
    throw UnsupportedConfiguration("series was built for m1 == 0");
  }
  const double g2 = gamma * gamma;
  if (s.variable == SeriesVariable::r) {
    const double a = detail::coefficient_a_raw(params, x);
    return {a / x, -g2 * a / (x * x)};
  }
  const double abar = detail::coefficient_a_bar_raw(params, x);
  return {(2.0 - abar) / x, -g2 * abar / (x * x)};
}

}  // namespace

ModeParams ModeParams::singular(double gamma, Branch branch) {
  return {gamma, branch == Branch::plus ? std::abs(gamma) : -std::abs(gamma), branch};
}

ModeParams ModeParams::regular(double gamma, Branch branch) {
  if (!(std::abs(gamma) <= 1.0)) {
    throw DomainError("regular family needs |gamma| <= 1 (indicial roots are complex otherwise)");
  }
  const double root = std::sqrt(1.0 - gamma * gamma);
  return {gamma, branch == Branch::plus ? 1.0 + root : 1.0 - root, branch};
}

ModeParams ModeParams::degenerate(double gamma, double nu) {
  if (nu != 0.0 && nu != 1.0) throw DomainError("degenerate family needs nu in {0, 1}");
  return {gamma, nu, nu == 1.0 ? Branch::plus : Branch::minus};
}

double JacobiPolynomial::operator()(double r) const {
  double v = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) v = v * r + coeffs[j];
  return v;
}

double JacobiPolynomial::derivative(double r, int order) const {
  std::vector<double> c = coeffs;
  for (int i = 0; i < order; ++i) c = differentiate(c);
  double v = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * r + c[j];
  return v;
}

JacobiPolynomial jacobi_polynomial(int n, const PermeabilityParams& params,
                                   std::optional<double> normalization) {
  params.validate();
  if (n < 1) throw DomainError("jacobi_polynomial: degree must be >= 1");
  require_m1_zero(params, "jacobi_polynomial");

  std::vector<double> c = rodrigues_kernel(n, params.m0);
  for (int i = 0; i < n; ++i) c = differentiate(c);
  // Dividing by rho = 1/r multiplies by r.
  std::vector<double> poly(c.size() + 1, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) poly[j + 1] = c[j];
  while (poly.size() > 1 && poly.back() == 0.0) poly.pop_back();

  const double b = normalization.value_or(1.0 / poly.back());
  for (double& v : poly) v *= b;
  return {n, std::move(poly), b};
}

JacobiEigenpair jacobi_eigenvalue(int n) {
  if (n < 1) throw DomainError("jacobi_eigenvalue: n must be >= 1");
  // sigma = r^2 + m0 r, tau = r: tau' = 1, sigma'' = 2.
  const double nn = n;
  const double lambda = -nn * 1.0 - nn * (nn - 1.0) / 2.0 * 2.0;
  return {lambda, nn};
}

long double pochhammer(long double x, int n) {
  long double p = 1.0L;
  for (int j = 0; j < n; ++j) p *= x + j;
  return p;
}

double singular_coeff_closed(const PermeabilityParams& params, const ModeParams& mode, int k) {
  params.validate();
  require_m1_zero(params, "singular_coeff_closed");
  require_singular_mode(mode);
  if (k < 0) throw DomainError("singular_coeff_closed: k must be nonnegative");

  const long double nu = mode.nu;
  const long double den_poch = pochhammer(2.0L * nu, k + 1);
  const long double den_shift = nu + k;
  if (std::abs(static_cast<double>(den_poch)) < 1e-300 || std::abs(static_cast<double>(den_shift)) < 1e-14) {
    throw DomainError("singular_coeff_closed: Pochhammer denominator vanishes for nu=" +
                      std::to_string(mode.nu));
  }
  const long double num = pochhammer(nu, k + 1);
  long double factorial = 1.0L;
  for (int j = 2; j <= k; ++j) factorial *= j;
  const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
  const long double value =
      sign * std::pow(static_cast<long double>(params.m0), k) * num * num / (factorial * den_poch * den_shift);
  return static_cast<double>(value);
}

std::vector<double> singular_coeffs_recurrence(const PermeabilityParams& params,
                                               const ModeParams& mode, int kmax) {
  params.validate();
  require_m1_zero(params, "singular_coeffs_recurrence");
  require_singular_mode(mode);
  require_kmax(kmax);
  const double nu = mode.nu;
  const double m0 = params.m0;

  std::vector<double> a(kmax + 1, 0.0);
  a[0] = 0.5;
  if (kmax >= 1) {
    require_nonzero(2.0 * nu + 1.0, "singular_coeffs_recurrence");
    a[1] = -a[0] * m0 * nu * (nu + 1.0) / (2.0 * nu + 1.0);
  }
  for (int k = 0; k + 2 <= kmax; ++k) {
    const double denom = (k + 2.0) * (k + 2.0 * nu + 2.0);
    require_nonzero(denom, "singular_coeffs_recurrence");
    a[k + 2] = -m0 * a[k + 1] * (k + nu + 1.0) * (k + nu + 2.0) / denom;
  }
  require_finite(a, "singular_coeffs_recurrence");
  return a;
}

std::vector<double> singular_coeffs_full(const PermeabilityParams& params, const ModeParams& mode,
                                         int kmax) {
  params.validate();
  require_singular_mode(mode);
  require_kmax(kmax);
  const double nu = mode.nu;
  const double m0 = params.m0;
  const double m1 = params.m1;

  std::vector<double> b(kmax + 1, 0.0);
  b[0] = 0.5;
  if (kmax >= 1) {
    require_nonzero(2.0 * nu + 1.0, "singular_coeffs_full");
    b[1] = -b[0] * m0 * nu * (nu + 1.0) / (2.0 * nu + 1.0);
  }
  for (int k = 0; k + 2 <= kmax; ++k) {
    const double denom = (k + 2.0) * (2.0 * nu + k + 2.0);
    require_nonzero(denom, "singular_coeffs_full");
    const double s = nu + k + 1.0;
    b[k + 2] = (-b[k + 1] * m0 * s * (s + 1.0) + b[k] * m1 * (s * s + nu * nu - 1.0)) / denom;
  }
  require_finite(b, "singular_coeffs_full");
  return b;
}

std::vector<double> regular_coeffs(const PermeabilityParams& params, const ModeParams& mode,
                                   int kmax) {
  params.validate();
  require_kmax(kmax);
  if (params.m1 == 0.0) {
    throw DomainError("regular_coeffs: m1 == 0, use the degenerate family instead");
  }
  if (!(std::abs(mode.gamma) <= 1.0)) {
    throw DomainError("regular_coeffs: |gamma| > 1 gives complex indicial roots");
  }
  const ModeParams expected = ModeParams::regular(mode.gamma, mode.branch);
  if (!nearly(mode.nu, expected.nu)) {
    throw DomainError("regular_coeffs: nu must equal 1 +- sqrt(1 - gamma^2)");
  }
  const double nu = mode.nu;
  const double g2 = mode.gamma * mode.gamma;
  const double m0 = params.m0;
  const double m1 = params.m1;

  std::vector<double> a(kmax + 1, 0.0);
  a[0] = 1.0;
  if (kmax >= 1) {
    require_nonzero(2.0 * nu - 1.0, "regular_coeffs");
    a[1] = a[0] * (m0 / m1) * nu * (nu - 1.0) / (2.0 * nu - 1.0);
  }
  for (int k = 0; k + 2 <= kmax; ++k) {
    const double denom = m1 * (k + 2.0) * (k + 2.0 * nu);
    require_nonzero(denom / m1, "regular_coeffs");
    const double lead = (k + 1.0) * (k + 2.0 * nu) + nu * (nu - 1.0);
    const double trail = k * (k + 2.0 * nu) + nu * nu - g2;
    a[k + 2] = (a[k + 1] * m0 * lead + a[k] * trail) / denom;
  }
  require_finite(a, "regular_coeffs");
  return a;
}

std::vector<double> degenerate_coeffs(const PermeabilityParams& params, const ModeParams& mode,
                                      int kmax) {
  params.validate();
  require_kmax(kmax);
  require_m1_zero(params, "degenerate_coeffs");
  if (mode.nu != 0.0 && mode.nu != 1.0) throw DomainError("degenerate_coeffs: nu must be 0 or 1");
  if (!(params.m0 > 0.0)) throw DomainError("degenerate_coeffs: m0 must be positive");
  const double nu = mode.nu;
  const double g2 = mode.gamma * mode.gamma;
  const double m0 = params.m0;

  std::vector<double> a(kmax + 1, 0.0);
  int start = 0;
  if (nu == 0.0 && g2 != 0.0) {
    // k = 0: -gamma^2 a_0 = 0, so a_0 = 0 and a_1 is free.
    start = 1;
  }
  if (start > kmax) return a;
  a[start] = 1.0;
  for (int k = start; k + 1 <= kmax; ++k) {
    const double denom = m0 * (k + 1.0) * (k + 2.0 * nu);
    if (denom == 0.0) {
      // nu = 0, gamma = 0: the constant solution.
      break;
    }
    a[k + 1] = -a[k] * (k * (k + 2.0 * nu) + nu - g2) / denom;
  }
  require_finite(a, "degenerate_coeffs");
  return a;
}

double estimate_radius(const std::vector<double>& coeffs) {
  const std::size_t n = coeffs.size();
  if (n < 4) return kInfiniteRadius;
  if (coeffs[n - 1] == 0.0 && coeffs[n - 2] == 0.0 && coeffs[n - 3] == 0.0) return kInfiniteRadius;

  auto fit = [&](int step) -> double {
    std::vector<double> xs, ys;
    for (std::size_t k = std::max<std::size_t>(n / 2, step); k < n; ++k) {
      const double c1 = coeffs[k];
      const double c0 = coeffs[k - step];
      if (c1 == 0.0 || c0 == 0.0) continue;
      xs.push_back(1.0 / static_cast<double>(k));
      ys.push_back(std::pow(std::abs(c1 / c0), 1.0 / step));
    }
    if (xs.size() < 3) return -1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double m = static_cast<double>(xs.size());
    const double det = m * sxx - sx * sx;
    if (det == 0.0) return sy / m;
    return (sxx * sy - sx * sxy) / det;  // intercept at 1/k -> 0
  };

  double limit = fit(1);
  if (!(limit > 0.0)) limit = fit(2);
  if (!(limit > 0.0) || !std::isfinite(limit)) return kInfiniteRadius;
  return 1.0 / limit;
}

RadialSeries build_series(SeriesKind kind, const PermeabilityParams& params,
                          const ModeParams& mode, int kmax) {
  RadialSeries s;
  s.kind = kind;
  switch (kind) {
    case SeriesKind::singular_m0:
      s.coeffs = singular_coeffs_recurrence(params, mode, kmax);
      s.nu = mode.nu;
      s.variable = SeriesVariable::t;
      s.radius = params.m0 > 0.0 ? 1.0 / params.m0 : kInfiniteRadius;
      break;
    case SeriesKind::singular_full:
      s.coeffs = singular_coeffs_full(params, mode, kmax);
      s.nu = mode.nu;
      s.variable = SeriesVariable::t;
      s.radius = estimate_radius(s.coeffs);
      break;
    case SeriesKind::regular:
      s.coeffs = regular_coeffs(params, mode, kmax);
      s.nu = mode.nu;
      s.variable = SeriesVariable::r;
      s.radius = estimate_radius(s.coeffs);
      break;
    case SeriesKind::degenerate: {
      std::vector<double> c = degenerate_coeffs(params, mode, kmax);
      s.nu = mode.nu;
      if (mode.nu == 0.0 && !c.empty() && c[0] == 0.0) {
        // r^0 (0 + a_1 r + ...) == r^1 (a_1 + a_2 r + ...)
        c.erase(c.begin());
        s.nu = 1.0;
      }
      s.coeffs = std::move(c);
      s.variable = SeriesVariable::r;
      s.radius = estimate_radius(s.coeffs);
      break;
    }
    case SeriesKind::polynomial:
      throw UnsupportedConfiguration("build_series: use polynomial_series for polynomial modes");
  }
  if (s.coeffs.empty() || s.coeffs[0] == 0.0) {
    throw DomainError("build_series: leading coefficient vanishes");
  }
  return s;
}

RadialSeries polynomial_series(const JacobiPolynomial& poly) {
  if (poly.coeffs.empty() || poly.coeffs[0] != 0.0) {
    throw DomainError("polynomial_series: polynomial must vanish at r = 0");
  }
  std::vector<double> c(poly.coeffs.begin() + 1, poly.coeffs.end());
  return polynomial_series(1.0, std::move(c));
}

RadialSeries polynomial_series(double nu, std::vector<double> coeffs, SeriesVariable variable) {
  if (coeffs.empty()) throw DomainError("polynomial_series: no coefficients");
  RadialSeries s;
  s.nu = nu;
  s.coeffs = std::move(coeffs);
  s.radius = kInfiniteRadius;
  s.variable = variable;
  s.kind = SeriesKind::polynomial;
  return s;
}

SeriesValue eval_series(const RadialSeries& series, double x, int terms, const EvalOptions& options) {
  check_argument(series, x, options);
  const std::size_t used = terms < 0 ? series.coeffs.size() : static_cast<std::size_t>(terms);
  if (used == 0 || used > series.coeffs.size()) {
    throw DomainError("eval_series: requested " + std::to_string(terms) + " terms, " +
                      std::to_string(series.coeffs.size()) + " available");
  }
  if (x == 0.0) {
    if (series.nu > 0.0) return {0.0, 0.0, static_cast<int>(used)};
    if (series.nu == 0.0) return {series.coeffs[0], 0.0, static_cast<int>(used)};
    throw DomainError("eval_series: negative exponent at x = 0");
  }
  const double scale = std::pow(x, series.nu);
  const HornerSums h = horner(series.coeffs, used, x, false);
  return {scale * h.s0, scale * tail_bound(series, used, x), static_cast<int>(used)};
}

SeriesValue eval_series_to_tolerance(const RadialSeries& series, double x, double tolerance,
                                     const EvalOptions& options) {
  check_argument(series, x, options);
  if (x == 0.0) return eval_series(series, x, -1, options);
  const double scale = std::pow(x, series.nu);
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t k = 0; k < series.coeffs.size(); ++k) {
    sum += series.coeffs[k] * power;
    power *= x;
    const double tail = tail_bound(series, k + 1, x);
    if (tail <= tolerance * std::abs(sum) || (sum == 0.0 && tail <= tolerance)) {
      return {scale * sum, scale * tail, static_cast<int>(k + 1)};
    }
  }
  throw ConvergenceError("eval_series_to_tolerance: " + std::to_string(series.coeffs.size()) +
                         " coefficients do not reach tolerance " + std::to_string(tolerance));
}

SeriesDerivatives eval_series_derivatives(const RadialSeries& series, double x,
                                          const EvalOptions& options) {
  check_argument(series, x, options);
  const double nu = series.nu;
  if (x == 0.0) {
    // only the monomials x^0, x^1, x^2 survive; fractional powers below 2 blow up
    SeriesDerivatives d;
    for (std::size_t k = 0; k < series.coeffs.size(); ++k) {
      const double e = nu + static_cast<double>(k);
      const double c = series.coeffs[k];
      if (c == 0.0 || e > 2.0) continue;
      if (e == 0.0) {
        d.value = c;
      } else if (e == 1.0) {
        d.first = c;
      } else if (e == 2.0) {
        d.second = 2.0 * c;
      } else {
        throw DomainError("eval_series_derivatives: derivatives are unbounded at x = 0");
      }
    }
    return d;
  }
  const HornerSums h = horner(series.coeffs, series.coeffs.size(), x, false);
  const double xn = std::pow(x, nu);
  SeriesDerivatives d;
  d.value = xn * h.s0;
  d.first = nu * xn / x * h.s0 + xn * h.s1;
  d.second = nu * (nu - 1.0) * xn / (x * x) * h.s0 + 2.0 * nu * xn / x * h.s1 + xn * h.s2;
  d.trunc_error = xn * tail_bound(series, series.coeffs.size(), x);
  return d;
}

double ode_residual(const RadialSeries& series, const PermeabilityParams& params, double gamma,
                    double x, const EvalOptions& options) {
  const SeriesDerivatives d = eval_series_derivatives(series, x, options);
  const OdeCoefficients c = ode_coefficients(series, params, gamma, x);
  return d.second + c.p * d.first + c.q * d.value;
}

double ode_residual_bound(const RadialSeries& series, const PermeabilityParams& params,
                          double gamma, double x, const EvalOptions& options) {
  check_argument(series, x, options);
  if (!(x > 0.0)) throw DomainError("ode_residual_bound: x must be positive");
  const OdeCoefficients c = ode_coefficients(series, params, gamma, x);
  const std::size_t terms = series.coeffs.size();
  const double nu = series.nu;
  const double xn = std::pow(x, nu);

  // Operator applied to the tail: each derivative costs at most a factor
  // (K + |nu| + 1/(1-q)) / x on a geometric tail.
  const double tail = xn * tail_bound(series, terms, x);
  double truncation = 0.0;
  if (tail > 0.0) {
    double q = std::isfinite(series.radius) ? x / series.radius : 0.0;
    q = std::min(q, 0.999);
    const double growth = (static_cast<double>(terms) + std::abs(nu) + 1.0 / (1.0 - q)) / x;
    truncation = tail * (growth * growth + std::abs(c.p) * growth + std::abs(c.q));
  }

  // Rounding floor from the absolute Horner sums.
  const HornerSums a = horner(series.coeffs, terms, x, true);
  const double v = xn * a.s0;
  const double d1 = std::abs(nu) * xn / x * a.s0 + xn * a.s1;
  const double d2 = std::abs(nu * (nu - 1.0)) * xn / (x * x) * a.s0 + 2.0 * std::abs(nu) * xn / x * a.s1 +
                    xn * a.s2;
  const double rounding =
      4.0 * (static_cast<double>(terms) + 4.0) * kEps * (d2 + std::abs(c.p) * d1 + std::abs(c.q) * v);
  return 2.0 * truncation + rounding;
}

}  // namespace legcorner
