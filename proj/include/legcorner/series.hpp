#pragma once

// Radial solutions of the separated hodograph equation
//
//   R'' + a(r) (R'/r - gamma^2 R / r^2) = 0
//
// and of its t = 1/r form
//
//   T'' + (2 - abar(t)) / t T' - gamma^2 abar(t) / t^2 T = 0.
//
// Four coefficient families are provided:
//   singular_m0   t^nu sum a_k t^k, m1 = 0, nu = +-|gamma|, a_0 = 1/2
//   singular_full t^nu sum b_k t^k, m1 >= 0, nu = +-|gamma|, b_0 = 1/2
//   regular       r^nu sum a_k r^k, m1 > 0, nu = 1 +- sqrt(1 - gamma^2), a_0 = 1
//   degenerate    r^nu sum a_k r^k, m1 = 0, nu in {0, 1}
// plus Rodrigues-formula polynomials for the m1 = 0 Jacobi-type equation.

#include <limits>
#include <optional>
#include <vector>

#include "legcorner/mu_model.hpp"

namespace legcorner {

enum class Branch { plus, minus };

struct ModeParams {
  double gamma = 0.0;
  double nu = 0.0;
  Branch branch = Branch::plus;

  /// nu = +|gamma| (plus) or -|gamma| (minus).
  static ModeParams singular(double gamma, Branch branch = Branch::plus);
  /// nu = 1 +- sqrt(1 - gamma^2); requires |gamma| <= 1.
  static ModeParams regular(double gamma, Branch branch = Branch::plus);
  /// nu must be 0 or 1.
  static ModeParams degenerate(double gamma, double nu);
};

enum class SeriesVariable { r, t };
enum class SeriesKind { singular_m0, singular_full, regular, degenerate, polynomial };

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();
inline constexpr int kDefaultTerms = 64;

/// x^nu * sum_k coeffs[k] x^k, convergent for 0 <= x < radius.
struct RadialSeries {
  double nu = 0.0;
  std::vector<double> coeffs;
  double radius = kInfiniteRadius;
  SeriesVariable variable = SeriesVariable::r;
  SeriesKind kind = SeriesKind::polynomial;
};

/// Monomial coefficients in r: coeffs[j] multiplies r^j.
struct JacobiPolynomial {
  int n = 0;
  std::vector<double> coeffs;
  double normalization = 1.0;  // B_n

  double operator()(double r) const;
  double derivative(double r, int order = 1) const;
};

struct JacobiEigenpair {
  double lambda = 0.0;
  double gamma = 0.0;
};

/// Rodrigues formula P_n = (B_n / rho) d^n/dr^n [rho sigma^n] with
/// sigma = r^2 + m0 r and rho = 1/r. Without an explicit B_n the polynomial
/// is made monic. Throws UnsupportedConfiguration when m1 != 0.
JacobiPolynomial jacobi_polynomial(int n, const PermeabilityParams& params,
                                   std::optional<double> normalization = std::nullopt);

/// lambda_n = -n tau' - n(n-1)/2 sigma'' = -n^2, gamma_n = n.
JacobiEigenpair jacobi_eigenvalue(int n);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), computed by products.
long double pochhammer(long double x, int n);

/// Closed-form coefficient of the singular m1 = 0 family,
/// a_k = (-1)^k m0^k ((nu)_{k+1})^2 / (k! (2nu)_{k+1} (nu+k)).
double singular_coeff_closed(const PermeabilityParams& params, const ModeParams& mode, int k);

/// a_0..a_kmax of the singular m1 = 0 family by the two-term recurrence.
std::vector<double> singular_coeffs_recurrence(const PermeabilityParams& params,
                                               const ModeParams& mode, int kmax);

/// b_0..b_kmax of the singular family with m1 >= 0 (three-term recurrence).
std::vector<double> singular_coeffs_full(const PermeabilityParams& params, const ModeParams& mode,
                                         int kmax);

/// a_0..a_kmax of the regular-point family in r (m1 > 0, |gamma| <= 1).
std::vector<double> regular_coeffs(const PermeabilityParams& params, const ModeParams& mode,
                                   int kmax);

/// a_0..a_kmax of the m1 = 0 family in r with nu in {0, 1}. For nu = 0 and
/// gamma != 0 the indicial relation forces a_0 = 0; a_1 is set to 1.
std::vector<double> degenerate_coeffs(const PermeabilityParams& params, const ModeParams& mode,
                                      int kmax);

RadialSeries build_series(SeriesKind kind, const PermeabilityParams& params,
                          const ModeParams& mode, int kmax = kDefaultTerms);

/// r * P(r) / r written as a series in r with nu = 1 (P has no constant term).
RadialSeries polynomial_series(const JacobiPolynomial& poly);
/// Finite series x^nu sum coeffs[k] x^k with infinite radius.
RadialSeries polynomial_series(double nu, std::vector<double> coeffs,
                               SeriesVariable variable = SeriesVariable::r);

/// Convergence radius from a Domb-Sykes fit of the coefficient ratios
/// |c_k / c_{k-1}| ~ L + B/k over the upper half of the coefficients.
/// Returns kInfiniteRadius for terminating series.
double estimate_radius(const std::vector<double>& coeffs);

struct EvalOptions {
  double safety = 0.95;  // evaluation refused for x > safety * radius
};

struct SeriesValue {
  double value = 0.0;
  double trunc_error = 0.0;
  int terms = 0;
};

struct SeriesDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
  double trunc_error = 0.0;  // bound on the omitted tail of the value
};

/// Horner evaluation with the first `terms` coefficients (-1: all of them).
SeriesValue eval_series(const RadialSeries& series, double x, int terms = -1,
                        const EvalOptions& options = {});

/// Smallest truncation whose geometric tail estimate is below
/// tolerance * |value|. Throws ConvergenceError if the stored coefficients
/// are not enough.
SeriesValue eval_series_to_tolerance(const RadialSeries& series, double x, double tolerance,
                                     const EvalOptions& options = {});

SeriesDerivatives eval_series_derivatives(const RadialSeries& series, double x,
                                          const EvalOptions& options = {});

/// Left-hand side of the governing radial ODE (normalized so the leading
/// coefficient of the second derivative is one) evaluated on the
/// term-by-term differentiated series.
double ode_residual(const RadialSeries& series, const PermeabilityParams& params, double gamma,
                    double x, const EvalOptions& options = {});

/// Upper estimate for |ode_residual| of a correctly built series: the ODE
/// operator applied to the geometric tail bound, plus a rounding floor.
double ode_residual_bound(const RadialSeries& series, const PermeabilityParams& params,
                          double gamma, double x, const EvalOptions& options = {});

}  // namespace legcorner
