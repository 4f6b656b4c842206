#pragma once

// Dirichlet problem for div[mu(|grad u|) grad u] = 0 on a corner domain,
// discretized with a vertex-centred finite-volume scheme
//
//   u_ij = (g_W u_W + g_E u_E + g_S u_S + g_N u_N) / (g_W + g_E + g_S + g_N).
//
// Each weight sums two half-face contributions mu_q * kappa * (width/2) / link.
// kappa = 1 gives the plain scheme; the adapted scheme sets kappa to the
// ratio of the mean of grad P over the half face to its mean over the node
// link, where P is a singular solution with the corner behaviour.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "legcorner/hodograph.hpp"
#include "legcorner/mu_model.hpp"

namespace legcorner {

enum class NodeTag : unsigned char { interior, boundary, exterior };

enum class Geometry {
  box,            // full rectangle
  l_shape,        // rectangle minus the open quadrant x > 0, y < 0
  sector_annulus  // r_in <= r <= r_out, theta_lo <= theta <= theta_hi (staircase mask)
};

struct MeshSpec {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  int nx = 65, ny = 65;   // node counts
  double grading = 1.0;   // q in (0, 1]; cell sizes shrink by q toward 0
  Geometry geometry = Geometry::l_shape;
  // sector_annulus only
  double r_in = 0.05, r_out = 1.0;
  double theta_lo = -0.75 * std::numbers::pi, theta_hi = 0.75 * std::numbers::pi;

  /// Throws DomainError on inconsistent extents, counts or grading.
  void validate() const;
};

struct CornerMesh {
  std::vector<double> x_nodes;
  std::vector<double> y_nodes;
  std::vector<NodeTag> mask;  // row-major: index j * nx + i
  Geometry geometry = Geometry::box;

  int nx() const { return static_cast<int>(x_nodes.size()); }
  int ny() const { return static_cast<int>(y_nodes.size()); }
  int index(int i, int j) const { return j * nx() + i; }
  int size() const { return nx() * ny(); }
  NodeTag tag(int i, int j) const { return mask[index(i, j)]; }
  int corner_i() const;
  int corner_j() const;
  /// Distance from the corner to the k-th node along the nearest axis
  /// direction that stays inside the mesh.
  double corner_distance(int k) const;
};

CornerMesh build_mesh(const MeshSpec& spec);

/// Phi_k(phi) = sin(lambda_k (phi - 3 pi / 2)), lambda_k = 2k.
struct AngularMode {
  int k = 1;
  double lambda = 2.0;

  static AngularMode make(int k);
  double operator()(double phi) const;
};

/// Per interior node: the four link weights, named by the neighbour they
/// multiply (x_minus = west, y_minus = south).
struct SchemeWeights {
  std::vector<double> g_x_minus, g_x_plus, g_y_minus, g_y_plus;
};

/// mu per node quadrant, order SW, SE, NE, NW (row-major nodes).
using MuField = std::vector<std::array<double, 4>>;

MuField uniform_mu(const CornerMesh& mesh, double value);

/// Half-face factors kappa per node, order: south face west/east half,
/// north face west/east half, west face south/north half, east face
/// south/north half.
struct FaceFactors {
  std::vector<std::array<double, 8>> kappa;
  int fallbacks = 0;    // segments where kappa fell back to 1
  int evaluations = 0;  // sampler calls spent in quadrature
};

FaceFactors unit_factors(const CornerMesh& mesh);

struct FactorOptions {
  double quad_tol = 1e-9;
  int quad_depth = 6;
};

/// kappa from segment means of G = grad P, with P sampled from `singular`.
/// Face means by adaptive Gauss-Kronrod quadrature; link means exactly
/// from P differences. P(corner) is taken as 0 where the sampler cannot evaluate it.
FaceFactors singular_factors(const CornerMesh& mesh, const FieldSampler& singular,
                             const FactorOptions& options = {});

SchemeWeights assemble_weights(const CornerMesh& mesh, const FaceFactors& factors, const MuField& mu);
SchemeWeights naive_weights(const CornerMesh& mesh, const MuField& mu);
SchemeWeights singular_weights(const CornerMesh& mesh, const FieldSampler& singular, const MuField& mu,
                               const FactorOptions& options = {});

/// A test problem: reference solution, Dirichlet data and the singular
/// function used by the adapted scheme.
struct CornerProblem {
  std::string name;
  PermeabilityParams params;
  FieldSampler reference;
  FieldSampler singular;
  // Dirichlet value at a boundary node; the default samples `reference`.
  std::function<double(double, double)> boundary;
  // Ray and radius range for the gradient-growth fit.
  double fit_angle = 0.75 * std::numbers::pi;
  double fit_r_min = 0.0;
  double fit_r_max = kInfiniteRadius;  // clipped to 0.9 of the mesh extent along the ray
  double expected_exponent = 0.0;
  // Meshes must stay within this distance of the corner (univalent image).
  double valid_radius = kInfiniteRadius;
};

/// Largest physical radius R such that the disk r < R around the corner is
/// covered once by the sheet of a t-coordinate solution: scanning t upward,
/// every ray of the sheet must move outward and det hess omega must keep
/// its sign. Returns the smallest |grad omega| on the last good ring.
double univalent_radius(const HodographSolution& sol, double t_min = 1e-3, int phi_samples = 181);

/// u from w = C1 T1(t) Phi_1(phi) + C2 T2(t) Phi_2(phi) on the hodograph sheet
/// 3 pi / 2 <= phi <= 2 pi, which maps onto the L-shaped domain with u = 0 on
/// the positive x axis and the negative y axis.
HodographSolution manufactured_solution(const PermeabilityParams& params, double c1, double c2,
                                        int kmax = kDefaultTerms);
CornerProblem manufactured_problem(const PermeabilityParams& params, double c1, double c2,
                                   const InvertOptions& options = {});
/// u = c1 atan2(y, x) + c2 (exact for every mu), for sector-annulus meshes.
CornerProblem arctan_problem(const PermeabilityParams& params, double c1, double c2);
/// u = a x + b y + c.
CornerProblem linear_problem(const PermeabilityParams& params, double a, double b, double c);

struct SolverConfig {
  double sor_omega = 1.5;
  double inner_tol = 1e-10;  // max-norm update, relative to the data scale
  int max_inner = 200000;
  double outer_tol = 1e-9;   // max-norm Picard increment, relative
  int max_outer = 200;
  double damping = 0.5;      // applied to mu updates once oscillation is seen
  int near_cells = 3;
  std::optional<double> rho_near;
  int fit_samples = 8;
};

struct SolveReport {
  int iterations = 0;     // outer Picard iterations
  int inner_sweeps = 0;   // total Gauss-Seidel sweeps
  double final_residual = 0.0;
  double picard_increment = 0.0;
  std::vector<double> u_grid;
  std::vector<double> rel_error_grid;
  double max_rel_error = 0.0;
  double near_corner_max_rel_error = 0.0;
  double rho_near = 0.0;
  double fitted_gradient_exponent = 0.0;  // NaN when no fit was possible
  int weight_fallbacks = 0;
};

/// Node values of the Dirichlet data (NaN off the boundary) and of the
/// reference (NaN where it is unavailable).
struct ProblemData {
  std::vector<double> boundary;
  std::vector<double> reference;
};

/// Throws DomainError when a mesh node lies beyond problem.valid_radius.
ProblemData sample_problem(const CornerMesh& mesh, const CornerProblem& problem);

/// Gauss-Seidel/SOR on the fixed-point form inside a Picard loop on mu.
/// `reference` may be empty; then the error fields stay zero.
SolveReport relax_solve(const CornerMesh& mesh, const FaceFactors& factors, const ProblemData& data,
                        const CornerProblem& problem, const SolverConfig& config = {});

double near_corner_max(const CornerMesh& mesh, const std::vector<double>& rel_error, double rho_near);

struct Comparison {
  SolveReport adapted;
  SolveReport naive;
  double near_corner_error_ratio = 0.0;
  // (cells, rho_near, naive error, adapted error, ratio)
  struct Row {
    int cells;
    double rho_near;
    double naive;
    double adapted;
    double ratio;
  };
  std::vector<Row> sensitivity;
  int adapted_fallbacks = 0;
};

/// Errors below this floor count as exact when forming ratios.
inline constexpr double kErrorFloor = 1e-12;
double error_ratio(double naive, double adapted);

/// Adapted and plain solves (run concurrently) with the near-corner ratio and
/// its sensitivity to rho_near over 1, 2, 3, 4, 6 cells.
Comparison compare_schemes(const CornerMesh& mesh, const CornerProblem& problem,
                           const SolverConfig& config = {}, const FactorOptions& factor_options = {});

/// Least-squares slope of log |grad u| against log r along a ray from the
/// corner. Needs at least 4 radii spanning a decade.
double fit_gradient_exponent(const FieldSampler& sampler, double angle, const std::vector<double>& radii);
double fit_gradient_exponent(const CornerMesh& mesh, const SolveReport& report, double angle,
                             const std::vector<double>& radii);

/// Slope of the least-squares line through (log x, log y).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> log_radii(double r_min, double r_max, int count);

}  // namespace legcorner
