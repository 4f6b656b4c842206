#include "legcorner/mu_model.hpp"

#include <cmath>
#include <string>

#include "legcorner/errors.hpp"

namespace legcorner {

void PermeabilityParams::validate() const {
  if (!std::isfinite(m0) || !std::isfinite(m1) || m0 < 0.0 || m1 < 0.0) {
    throw DomainError("permeability parameters must satisfy m0 >= 0, m1 >= 0 (got m0=" +
                      std::to_string(m0) + ", m1=" + std::to_string(m1) + ")");
  }
}

double mu(const PermeabilityParams& params, double h) {
  params.validate();
  if (!(h > 0.0)) throw DomainError("mu: field strength must be positive");
  if (std::isinf(h)) return 1.0;
  const double value = 1.0 + params.m0 / h - params.m1 / (h * h);
  if (!(value > 0.0)) {
    throw DomainError("mu: permeability is not positive at H=" + std::to_string(h) +
                      " (ellipticity violated)");
  }
  return value;
}

double mu_derivative(const PermeabilityParams& params, double h) {
  params.validate();
  if (!(h > 0.0)) throw DomainError("mu_derivative: field strength must be positive");
  return -params.m0 / (h * h) + 2.0 * params.m1 / (h * h * h);
}

double susceptibility(const PermeabilityParams& params, double h) { return mu(params, h) - 1.0; }

double magnetization(const PermeabilityParams& params, double h) {
  return susceptibility(params, h) * h;
}

namespace detail {

double coefficient_a_raw(const PermeabilityParams& params, double r) {
  return (r * r + params.m1) / (r * r + params.m0 * r - params.m1);
}

double coefficient_a_bar_raw(const PermeabilityParams& params, double t) {
  return (1.0 + params.m1 * t * t) / (1.0 + params.m0 * t - params.m1 * t * t);
}

}  // namespace detail

double coefficient_a(const PermeabilityParams& params, double r) {
  params.validate();
  if (!(r > 0.0)) throw DomainError("coefficient_a: r must be positive");
  if (std::isinf(r)) return 1.0;
  const double denom = r * r + params.m0 * r - params.m1;
  if (!(denom > 0.0)) {
    throw DomainError("coefficient_a: r=" + std::to_string(r) +
                      " is below the ellipticity threshold");
  }
  return (r * r + params.m1) / denom;
}

double coefficient_a_bar(const PermeabilityParams& params, double t) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("coefficient_a_bar: t must be positive");
  const double denom = 1.0 + params.m0 * t - params.m1 * t * t;
  if (!(denom > 0.0)) {
    throw DomainError("coefficient_a_bar: t=" + std::to_string(t) +
                      " is beyond the ellipticity threshold");
  }
  return (1.0 + params.m1 * t * t) / denom;
}

double ellipticity_threshold(const PermeabilityParams& params) {
  params.validate();
  if (params.m1 == 0.0) return 0.0;
  // Positive root of r^2 + m0 r - m1, written to avoid cancellation.
  return 2.0 * params.m1 / (params.m0 + std::sqrt(params.m0 * params.m0 + 4.0 * params.m1));
}

}  // namespace legcorner
