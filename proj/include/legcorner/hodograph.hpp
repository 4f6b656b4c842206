#pragma once

// Legendre (hodograph) bridge between the linear equation for
// omega(xi, eta) and the nonlinear equation div[mu(|grad u|) grad u] = 0:
//
//   omega + u = x xi + y eta,  xi = u_x, eta = u_y,  x = omega_xi, y = omega_eta,
//   u_xx = J omega_etaeta, u_xy = -J omega_xieta, u_yy = J omega_xixi,
//
// with J = u_xx u_yy - u_xy^2 = 1 / det(hess omega).

#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "legcorner/mu_model.hpp"
#include "legcorner/series.hpp"

namespace legcorner {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double norm(const Vec2& v);

/// Symmetric 2x2 matrix.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
};

/// One separated term R(rho) (cos_amp cos(gamma phi) + sin_amp sin(gamma phi)).
struct Mode {
  double gamma = 0.0;
  RadialSeries radial;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};

/// amplitude * sin(gamma (phi - phase)) expressed through cos/sin amplitudes.
Mode shifted_sine_mode(double gamma, RadialSeries radial, double amplitude, double phase);

/// Which hodograph radius the radial factors are written in:
/// r = |(xi, eta)| or t = 1 / |(xi, eta)|.
enum class RadialCoordinate { r, t };

/// Angular sheet [lo, hi] of the hodograph plane, hi - lo <= 2 pi. The polar
/// angle is normalized into [lo, lo + 2 pi) before evaluation, so lo is
/// also the branch cut for non-integer gamma.
struct AngularWindow {
  double lo = -std::numbers::pi;
  double hi = std::numbers::pi;

  bool full() const { return hi - lo >= 2.0 * std::numbers::pi - 1e-12; }
  bool contains(double phi, double tol = 1e-9) const;
  double normalize(double phi) const;
};

struct HodographSolution {
  std::vector<Mode> modes;
  RadialCoordinate coordinate = RadialCoordinate::r;
  AngularWindow window;
  EvalOptions eval;
  // Optional annulus restriction on rho in addition to the series radii.
  double rho_min = 0.0;
  double rho_max = kInfiniteRadius;

  /// Throws DomainError on inconsistent mode variables or empty solution.
  void validate() const;
  /// Effective rho range allowed by the series radii and the annulus.
  double lower_rho() const;
  double upper_rho() const;
};

struct OmegaEval {
  double omega = 0.0;
  Vec2 grad;
  Sym2 hess;
};

/// omega and its exact first and second derivatives at (xi, eta).
/// Throws OutOfRadius / DomainError outside the convergence domain or the
/// angular window.
OmegaEval eval_omega(const HodographSolution& sol, double xi, double eta);

struct InvertOptions {
  double tol = 1e-10;   // ||grad omega - (x, y)|| <= tol (1 + ||(x, y)||)
  double jtol = 1e-12;  // |det H| <= jtol ||H||_F^2 is treated as singular
  int max_iter = 50;
  bool polish = true;   // one extra Newton step after convergence
};

struct InverseResult {
  double xi = 0.0;
  double eta = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double jacobian = 0.0;  // det hess omega at the root
};

/// Solves grad omega(xi, eta) = (x, y) by damped Newton with the analytic
/// Hessian. Without a seed the leading singular term is inverted in closed
/// form (t-coordinate solutions) or a polar grid is searched; several
/// distinct preimages on the sheet raise MultivaluedMap.
InverseResult invert_map(const HodographSolution& sol, double x, double y,
                         std::optional<Vec2> seed = std::nullopt, const InvertOptions& options = {});

struct PhysicalField {
  double u = 0.0;
  Vec2 grad;       // equals the hodograph point (xi, eta)
  Sym2 hessian;
  Vec2 source_point;
};

/// u = x xi + y eta - omega at the preimage of (x, y); Hessian = inverse of
/// hess omega.
PhysicalField to_physical(const HodographSolution& sol, double x, double y,
                          std::optional<Vec2> seed = std::nullopt, const InvertOptions& options = {});

/// u = c1 atan2(y, x) + c2, exact for every radial mu.
PhysicalField arctan_reference(double c1, double c2, double x, double y);

using FieldSampler = std::function<PhysicalField(double, double)>;

/// Sampler that inverts the hodograph map at every query (seedless).
FieldSampler make_sampler(HodographSolution sol, InvertOptions options = {});

/// Central-difference divergence of mu(|grad u|) grad u on the cross of
/// spacing h around (x, y), using the sampler's gradients.
double residual_nonlinear(const PermeabilityParams& params, const FieldSampler& sampler, double x,
                          double y, double h);

/// Single mode T(1/rho) cos(gamma phi) built from the m1 = 0 singular family,
/// on the sheet of width 2 pi / (gamma + 1) centred at phi = 0.
HodographSolution singular_cos_solution(const PermeabilityParams& params, double gamma,
                                        double amplitude = 1.0, int kmax = kDefaultTerms);

}  // namespace legcorner
