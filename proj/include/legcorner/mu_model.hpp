#pragma once

// Two-parameter permeability model mu(H) = 1 + m0/H - m1/H^2 and the
// coefficient a(r) it induces on the polar hodograph equation
//
//   v_rr + a(r) (v_r / r + v_phiphi / r^2) = 0,   a(r) = 1 + r mu'(r) / mu(r).
//
// Here r = |grad u| is the hodograph radius. The t = 1/r variant is
// abar(t) = a(1/t).

namespace legcorner {

struct PermeabilityParams {
  double m0 = 0.0;  // saturation magnetization scale
  double m1 = 0.0;  // second-order correction

  /// Throws DomainError unless m0 >= 0 and m1 >= 0 and both are finite.
  void validate() const;
};

/// mu(H) = 1 + m0/H - m1/H^2. Throws DomainError if h <= 0 or mu(h) <= 0.
double mu(const PermeabilityParams& params, double h);

/// d mu / dH.
double mu_derivative(const PermeabilityParams& params, double h);

/// Susceptibility chi = mu - 1 and magnetization M = chi * H.
double susceptibility(const PermeabilityParams& params, double h);
double magnetization(const PermeabilityParams& params, double h);

/// a(r) = (r^2 + m1) / (r^2 + m0 r - m1). Throws DomainError when the
/// denominator is not positive (the equation stops being elliptic).
double coefficient_a(const PermeabilityParams& params, double r);

/// abar(t) = (1 + m1 t^2) / (1 + m0 t - m1 t^2) = a(1/t).
double coefficient_a_bar(const PermeabilityParams& params, double t);

/// Smallest r > 0 at which a(r) is finite and positive, i.e. the positive
/// root of r^2 + m0 r - m1 (zero when m1 == 0).
double ellipticity_threshold(const PermeabilityParams& params);

namespace detail {
// Unguarded rational forms. The regular-point series of the m1 > 0 family
// lives below the ellipticity threshold, and its ODE residual still has to
// be evaluated there.
double coefficient_a_raw(const PermeabilityParams& params, double r);
double coefficient_a_bar_raw(const PermeabilityParams& params, double t);
}  // namespace detail

}  // namespace legcorner
