#pragma once

// Reference computations used by the tests. None of them call the code path
// they are compared against: coefficients are summed in 50-digit binary
// floating point, polynomials are expanded by the binomial theorem, inverse
// maps are found by grid refinement, derivatives by finite differences.

#include <functional>
#include <vector>

#include "legcorner/hodograph.hpp"
#include "legcorner/mu_model.hpp"
#include "legcorner/series.hpp"

namespace oracle {

/// a_k of the singular m1 = 0 family from the product formula, in 50-digit
/// arithmetic, k = 0..kmax.
std::vector<double> singular_coeffs(double m0, double nu, int kmax);

/// t^nu sum_{k<terms} a_k t^k with the coefficients above, in 50 digits.
double singular_sum(double m0, double nu, double t, int terms);

/// Left-hand side of the radial ODE for x^nu sum c_k x^k, with every
/// derivative and coefficient evaluated in 50 digits. Same normalization as
/// the library (unit coefficient on the second derivative).
double ode_residual(const std::vector<double>& coeffs, double nu, legcorner::SeriesVariable variable,
                    double m0, double m1, double gamma, double x);

/// Monomial coefficients of r d^n/dr^n [r^(n-1) (r + m0)^n], expanded
/// with binomial coefficients.
std::vector<double> rodrigues(int n, double m0);

/// Preimage of (x, y) under grad omega by successive grid refinement of
/// ||grad omega - (x, y)|| over the sheet (no Newton steps).
legcorner::Vec2 grid_inverse(const legcorner::HodographSolution& sol, double x, double y,
                             double rho_lo, double rho_hi);

/// Central differences of omega for its gradient and Hessian.
legcorner::OmegaEval fd_omega(const legcorner::HodographSolution& sol, double xi, double eta, double h);

/// Central-difference derivative of a scalar function.
double central(const std::function<double(double)>& f, double x, double h);

}  // namespace oracle
