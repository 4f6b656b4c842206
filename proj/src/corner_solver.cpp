#include "legcorner/corner_solver.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "legcorner/errors.hpp"

namespace legcorner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

struct Spacing {
  double xm, xp, ym, yp;
};

Spacing spacing(const CornerMesh& m, int i, int j) {
  return {m.x_nodes[i] - m.x_nodes[i - 1], m.x_nodes[i + 1] - m.x_nodes[i], m.y_nodes[j] - m.y_nodes[j - 1],
          m.y_nodes[j + 1] - m.y_nodes[j]};
}

// Regularized mu: the gradient is floored away from the zero of mu.
double cell_mu(const PermeabilityParams& p, double h) {
  if (p.m0 == 0.0 && p.m1 == 0.0) return 1.0;
  const double floor = std::max(2.0 * ellipticity_threshold(p), 1e-8);
  return mu(p, std::max(h, floor));
}

MuField mu_from_solution(const CornerMesh& m, const std::vector<double>& u, const PermeabilityParams& p) {
  MuField out(m.size(), {1.0, 1.0, 1.0, 1.0});
  const int nx = m.nx();
  for (int j = 1; j + 1 < m.ny(); ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const int id = m.index(i, j);
      if (m.mask[id] != NodeTag::interior) continue;
      const Spacing h = spacing(m, i, j);
      const double wx = (u[id] - u[id - 1]) / h.xm;
      const double ex = (u[id + 1] - u[id]) / h.xp;
      const double sy = (u[id] - u[id - nx]) / h.ym;
      const double ny = (u[id + nx] - u[id]) / h.yp;
      out[id] = {cell_mu(p, std::hypot(wx, sy)), cell_mu(p, std::hypot(ex, sy)), cell_mu(p, std::hypot(ex, ny)),
                 cell_mu(p, std::hypot(wx, ny))};
    }
  }
  return out;
}

double data_scale(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) {
    if (std::isfinite(x)) s = std::max(s, std::abs(x));
  }
  return s > 0.0 ? s : 1.0;
}

// Distance from the corner to the mesh box along the ray at `angle`.
double ray_extent(const CornerMesh& m, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  double t = std::numeric_limits<double>::infinity();
  if (c > 1e-15) t = std::min(t, m.x_nodes.back() / c);
  if (c < -1e-15) t = std::min(t, m.x_nodes.front() / c);
  if (s > 1e-15) t = std::min(t, m.y_nodes.back() / s);
  if (s < -1e-15) t = std::min(t, m.y_nodes.front() / s);
  return t;
}

PhysicalField linear_field(double a, double b, double c, double x, double y) {
  PhysicalField f;
  f.u = a * x + b * y + c;
  f.grad = {a, b};
  f.source_point = {x, y};
  return f;
}

}  // namespace

MuField uniform_mu(const CornerMesh& mesh, double value) {
  return MuField(mesh.size(), {value, value, value, value});
}

FaceFactors unit_factors(const CornerMesh& mesh) {
  FaceFactors f;
  f.kappa.assign(mesh.size(), {1, 1, 1, 1, 1, 1, 1, 1});
  return f;
}

FaceFactors singular_factors(const CornerMesh& mesh, const FieldSampler& singular, const FactorOptions& options) {
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  FaceFactors f = unit_factors(mesh);

  std::vector<double> P(mesh.size(), kNaN);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int id = mesh.index(i, j);
      if (mesh.mask[id] == NodeTag::exterior) continue;
      const double x = mesh.x_nodes[i];
      const double y = mesh.y_nodes[j];
      try {
        P[id] = singular(x, y).u;
        ++f.evaluations;
      } catch (const std::exception&) {
        // singular solutions are normalized to vanish at the corner
        if (x == 0.0 && y == 0.0) P[id] = 0.0;
      }
    }
  }

  // Half-segment means per cell: horizontal left/right halves of G_y through
  // the cell centre, vertical bottom/top halves of G_x.
  const int cx = nx - 1;
  std::vector<std::array<double, 4>> seg(static_cast<std::size_t>(cx) * (ny - 1), {kNaN, kNaN, kNaN, kNaN});
  std::vector<std::array<bool, 4>> done(seg.size(), {false, false, false, false});
  auto mean = [&](int ci, int cj, int which) {
    const int c = cj * cx + ci;
    if (done[c][which]) return seg[c][which];
    const double x0 = mesh.x_nodes[ci], x1 = mesh.x_nodes[ci + 1];
    const double y0 = mesh.y_nodes[cj], y1 = mesh.y_nodes[cj + 1];
    const double xc = 0.5 * (x0 + x1), yc = 0.5 * (y0 + y1);
    double value = kNaN;
    try {
      using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
      if (which < 2) {
        const double a = which == 0 ? x0 : xc;
        const double b = which == 0 ? xc : x1;
        auto g = [&](double x) {
          ++f.evaluations;
          return singular(x, yc).grad.y;
        };
        value = GK::integrate(g, a, b, options.quad_depth, options.quad_tol) / (b - a);
      } else {
        const double a = which == 2 ? y0 : yc;
        const double b = which == 2 ? yc : y1;
        auto g = [&](double y) {
          ++f.evaluations;
          return singular(xc, y).grad.x;
        };
        value = GK::integrate(g, a, b, options.quad_depth, options.quad_tol) / (b - a);
      }
    } catch (const std::exception&) {
      value = kNaN;
    }
    done[c][which] = true;
    seg[c][which] = value;
    return value;
  };
  enum { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const int id = mesh.index(i, j);
      if (mesh.mask[id] != NodeTag::interior) continue;
      const Spacing h = spacing(mesh, i, j);
      const double gs = (P[id] - P[id - nx]) / h.ym;
      const double gn = (P[id + nx] - P[id]) / h.yp;
      const double gw = (P[id] - P[id - 1]) / h.xm;
      const double ge = (P[id + 1] - P[id]) / h.xp;
      const std::array<double, 8> face = {
          mean(i - 1, j - 1, kRight), mean(i, j - 1, kLeft), mean(i - 1, j, kRight), mean(i, j, kLeft),
          mean(i - 1, j - 1, kTop),   mean(i - 1, j, kBottom), mean(i, j - 1, kTop), mean(i, j, kBottom)};
      const std::array<double, 8> link = {gs, gs, gn, gn, gw, gw, ge, ge};
      for (int q = 0; q < 8; ++q) {
        const double k = face[q] / link[q];
        if (std::isfinite(k) && k > 0.0) {
          f.kappa[id][q] = k;
        } else {
          ++f.fallbacks;
        }
      }
    }
  }
  return f;
}

SchemeWeights assemble_weights(const CornerMesh& mesh, const FaceFactors& factors, const MuField& mu_field) {
  if (static_cast<int>(factors.kappa.size()) != mesh.size() || static_cast<int>(mu_field.size()) != mesh.size()) {
    throw DomainError("assemble_weights: field sizes do not match the mesh");
  }
  SchemeWeights w;
  w.g_x_minus.assign(mesh.size(), 0.0);
  w.g_x_plus.assign(mesh.size(), 0.0);
  w.g_y_minus.assign(mesh.size(), 0.0);
  w.g_y_plus.assign(mesh.size(), 0.0);
  for (int j = 1; j + 1 < mesh.ny(); ++j) {
    for (int i = 1; i + 1 < mesh.nx(); ++i) {
      const int id = mesh.index(i, j);
      if (mesh.mask[id] != NodeTag::interior) continue;
      const Spacing h = spacing(mesh, i, j);
      const auto& k = factors.kappa[id];
      const auto& m = mu_field[id];  // SW, SE, NE, NW
      w.g_y_minus[id] = (m[0] * k[0] * h.xm / 2 + m[1] * k[1] * h.xp / 2) / h.ym;
      w.g_y_plus[id] = (m[3] * k[2] * h.xm / 2 + m[2] * k[3] * h.xp / 2) / h.yp;
      w.g_x_minus[id] = (m[0] * k[4] * h.ym / 2 + m[3] * k[5] * h.yp / 2) / h.xm;
      w.g_x_plus[id] = (m[1] * k[6] * h.ym / 2 + m[2] * k[7] * h.yp / 2) / h.xp;
    }
  }
  return w;
}

SchemeWeights naive_weights(const CornerMesh& mesh, const MuField& mu_field) {
  return assemble_weights(mesh, unit_factors(mesh), mu_field);
}

SchemeWeights singular_weights(const CornerMesh& mesh, const FieldSampler& singular, const MuField& mu_field,
                               const FactorOptions& options) {
  return assemble_weights(mesh, singular_factors(mesh, singular, options), mu_field);
}

HodographSolution manufactured_solution(const PermeabilityParams& params, double c1, double c2, int kmax) {
  params.validate();
  HodographSolution sol;
  sol.coordinate = RadialCoordinate::t;
  sol.window = {1.5 * kPi, 2.0 * kPi};
  // sin(2k (phi - 3 pi / 2)) = (-1)^k sin(2k phi)
  const double amps[2] = {c1, c2};
  for (int k = 1; k <= 2; ++k) {
    if (amps[k - 1] == 0.0) continue;
    const double gamma = 2.0 * k;
    Mode m;
    m.gamma = gamma;
    m.radial = build_series(SeriesKind::singular_full, params, ModeParams::singular(gamma), kmax);
    m.sin_amp = (k % 2 == 1 ? -1.0 : 1.0) * amps[k - 1];
    sol.modes.push_back(std::move(m));
  }
  if (sol.modes.empty()) throw DomainError("manufactured_solution: both amplitudes are zero");
  if (c1 == 0.0) throw DomainError("manufactured_solution: the first amplitude must be nonzero");
  return sol;
}

double univalent_radius(const HodographSolution& sol, double t_min, int phi_samples) {
  sol.validate();
  if (sol.coordinate != RadialCoordinate::t) throw DomainError("univalent_radius: needs a t-coordinate solution");
  if (phi_samples < 3 || !(t_min > 0.0)) throw DomainError("univalent_radius: bad sampling");
  double t_max = kInfiniteRadius;
  for (const Mode& m : sol.modes) t_max = std::min(t_max, sol.eval.safety * m.radial.radius);
  if (!std::isfinite(t_max)) t_max = 1e3;
  if (!(t_max > t_min)) throw DomainError("univalent_radius: t_min beyond the series radius");
  const double a0 = sol.window.lo;
  const double a1 = sol.window.hi;

  std::vector<double> prev;
  double sign = 0.0;
  double good = 0.0;
  for (double t = t_min; t <= t_max; t *= 1.02) {
    std::vector<double> ring(phi_samples);
    bool ok = true;
    for (int k = 0; k < phi_samples && ok; ++k) {
      const double phi = a0 + (a1 - a0) * k / (phi_samples - 1);
      const OmegaEval e = eval_omega(sol, std::cos(phi) / t, std::sin(phi) / t);
      const double d = e.hess.det();
      if (sign == 0.0) sign = d < 0.0 ? -1.0 : 1.0;
      if (!(d * sign > 0.0)) ok = false;
      ring[k] = norm(e.grad);
      if (!prev.empty() && !(ring[k] > prev[k])) ok = false;
    }
    if (!ok) break;
    good = *std::min_element(ring.begin(), ring.end());
    prev = std::move(ring);
  }
  return good;
}

CornerProblem manufactured_problem(const PermeabilityParams& params, double c1, double c2,
                                   const InvertOptions& options) {
  CornerProblem p;
  p.name = "manufactured";
  p.params = params;
  p.reference = make_sampler(manufactured_solution(params, c1, c2), options);
  p.singular = make_sampler(manufactured_solution(params, 1.0, 0.0), options);
  p.boundary = [ref = p.reference](double x, double y) {
    if ((y == 0.0 && x >= 0.0) || (x == 0.0 && y <= 0.0)) return 0.0;
    return ref(x, y).u;
  };
  p.fit_angle = 0.75 * kPi;
  p.fit_r_max = kInfiniteRadius;
  p.expected_exponent = -1.0 / 3.0;
  p.valid_radius = univalent_radius(manufactured_solution(params, c1, c2));
  return p;
}

CornerProblem arctan_problem(const PermeabilityParams& params, double c1, double c2) {
  params.validate();
  CornerProblem p;
  p.name = "arctan";
  p.params = params;
  p.reference = [c1, c2](double x, double y) { return arctan_reference(c1, c2, x, y); };
  p.singular = [](double x, double y) { return arctan_reference(1.0, 0.0, x, y); };
  p.boundary = [c1, c2](double x, double y) { return arctan_reference(c1, c2, x, y).u; };
  p.fit_angle = 0.0;
  p.fit_r_min = 0.08;
  p.fit_r_max = 0.9;
  p.expected_exponent = -1.0;
  return p;
}

CornerProblem linear_problem(const PermeabilityParams& params, double a, double b, double c) {
  params.validate();
  CornerProblem p;
  p.name = "linear";
  p.params = params;
  p.reference = [a, b, c](double x, double y) { return linear_field(a, b, c, x, y); };
  p.singular = p.reference;
  p.boundary = [a, b, c](double x, double y) { return a * x + b * y + c; };
  p.fit_angle = 0.75 * kPi;
  p.fit_r_max = kInfiniteRadius;
  p.expected_exponent = 0.0;
  return p;
}

ProblemData sample_problem(const CornerMesh& mesh, const CornerProblem& problem) {
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      if (mesh.tag(i, j) == NodeTag::exterior) continue;
      if (std::hypot(mesh.x_nodes[i], mesh.y_nodes[j]) > problem.valid_radius) {
        throw DomainError("mesh reaches r = " + std::to_string(std::hypot(mesh.x_nodes[i], mesh.y_nodes[j])) +
                          ", beyond the radius " + std::to_string(problem.valid_radius) +
                          " where the reference solution is single-valued");
      }
    }
  }
  ProblemData d;
  d.boundary.assign(mesh.size(), kNaN);
  d.reference.assign(mesh.size(), kNaN);
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const int id = mesh.index(i, j);
      const NodeTag t = mesh.mask[id];
      if (t == NodeTag::exterior) continue;
      const double x = mesh.x_nodes[i];
      const double y = mesh.y_nodes[j];
      if (t == NodeTag::boundary) d.boundary[id] = problem.boundary(x, y);
      if (problem.reference) {
        try {
          d.reference[id] = problem.reference(x, y).u;
        } catch (const std::exception&) {
          if (t == NodeTag::boundary) d.reference[id] = d.boundary[id];
        }
      }
    }
  }
  return d;
}

double near_corner_max(const CornerMesh& mesh, const std::vector<double>& rel_error, double rho_near) {
  double best = 0.0;
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const int id = mesh.index(i, j);
      if (mesh.mask[id] != NodeTag::interior) continue;
      if (std::hypot(mesh.x_nodes[i], mesh.y_nodes[j]) < rho_near * (1.0 - 1e-12)) {
        best = std::max(best, rel_error[id]);
      }
    }
  }
  return best;
}

SolveReport relax_solve(const CornerMesh& mesh, const FaceFactors& factors, const ProblemData& data,
                        const CornerProblem& problem, const SolverConfig& config) {
  problem.params.validate();
  if (static_cast<int>(data.boundary.size()) != mesh.size()) {
    throw DomainError("relax_solve: boundary data size does not match the mesh");
  }
  if (!(config.sor_omega > 0.0 && config.sor_omega < 2.0)) {
    throw DomainError("relax_solve: SOR factor must lie in (0, 2)");
  }
  const int nx = mesh.nx();
  std::vector<int> interior;
  double bsum = 0.0;
  int bcount = 0;
  std::vector<double> u(mesh.size(), 0.0);
  for (int id = 0; id < mesh.size(); ++id) {
    if (mesh.mask[id] == NodeTag::interior) {
      interior.push_back(id);
    } else if (mesh.mask[id] == NodeTag::boundary) {
      if (!std::isfinite(data.boundary[id])) {
        throw DomainError("relax_solve: missing boundary value at node " + std::to_string(id));
      }
      u[id] = data.boundary[id];
      bsum += u[id];
      ++bcount;
    }
  }
  if (bcount == 0) throw DomainError("relax_solve: mesh has no boundary nodes");
  const double start = bsum / bcount;
  for (int id : interior) u[id] = start;
  const double scale = data_scale(data.boundary);

  const bool linear = problem.params.m0 == 0.0 && problem.params.m1 == 0.0;
  MuField mu_field = uniform_mu(mesh, 1.0);
  SolveReport rep;
  double prev_increment = std::numeric_limits<double>::infinity();
  bool damp = false;
  SchemeWeights w;

  for (int outer = 1;; ++outer) {
    w = assemble_weights(mesh, factors, mu_field);
    for (int id : interior) {
      const double g[4] = {w.g_x_minus[id], w.g_x_plus[id], w.g_y_minus[id], w.g_y_plus[id]};
      for (double v : g) {
        if (!(std::isfinite(v) && v > 0.0)) {
          throw DomainError("relax_solve: non-positive scheme weight at node " + std::to_string(id));
        }
      }
    }
    const std::vector<double> before = u;
    for (;;) {
      if (rep.inner_sweeps >= config.max_inner) {
        throw ConvergenceError("relax_solve: inner iteration limit reached");
      }
      ++rep.inner_sweeps;
      double change = 0.0;
      for (int id : interior) {
        const double num = w.g_x_minus[id] * u[id - 1] + w.g_x_plus[id] * u[id + 1] + w.g_y_minus[id] * u[id - nx] +
                           w.g_y_plus[id] * u[id + nx];
        const double den = w.g_x_minus[id] + w.g_x_plus[id] + w.g_y_minus[id] + w.g_y_plus[id];
        const double du = config.sor_omega * (num / den - u[id]);
        u[id] += du;
        change = std::max(change, std::abs(du));
      }
      if (change <= config.inner_tol * scale) break;
    }
    rep.iterations = outer;
    double increment = 0.0;
    for (int id : interior) increment = std::max(increment, std::abs(u[id] - before[id]));
    increment /= scale;
    rep.picard_increment = increment;
    if (linear || increment <= config.outer_tol) break;
    if (outer >= config.max_outer) {
      throw ConvergenceError("relax_solve: Picard iteration did not converge (increment " +
                             std::to_string(increment) + ")");
    }
    if (outer > 2 && increment > prev_increment) damp = true;
    prev_increment = increment;
    MuField next = mu_from_solution(mesh, u, problem.params);
    if (damp) {
      for (int id : interior) {
        for (int q = 0; q < 4; ++q) next[id][q] = mu_field[id][q] + config.damping * (next[id][q] - mu_field[id][q]);
      }
    }
    mu_field = std::move(next);
  }

  double residual = 0.0;
  for (int id : interior) {
    const double num = w.g_x_minus[id] * u[id - 1] + w.g_x_plus[id] * u[id + 1] + w.g_y_minus[id] * u[id - nx] +
                       w.g_y_plus[id] * u[id + nx];
    const double den = w.g_x_minus[id] + w.g_x_plus[id] + w.g_y_minus[id] + w.g_y_plus[id];
    residual = std::max(residual, std::abs(num / den - u[id]));
  }
  rep.final_residual = residual / scale;
  rep.weight_fallbacks = factors.fallbacks;
  rep.u_grid = u;

  rep.rel_error_grid.assign(mesh.size(), 0.0);
  if (static_cast<int>(data.reference.size()) == mesh.size()) {
    const double floor = 1e-8 * data_scale(data.reference);
    for (int id : interior) {
      const double ref = data.reference[id];
      if (!std::isfinite(ref)) continue;
      rep.rel_error_grid[id] = std::abs(u[id] - ref) / std::max(std::abs(ref), floor);
      rep.max_rel_error = std::max(rep.max_rel_error, rep.rel_error_grid[id]);
    }
  }
  rep.rho_near = config.rho_near ? *config.rho_near : mesh.corner_distance(config.near_cells);
  rep.near_corner_max_rel_error = near_corner_max(mesh, rep.rel_error_grid, rep.rho_near);

  rep.fitted_gradient_exponent = kNaN;
  try {
    const double r0 = std::max(problem.fit_r_min, 3.0 * mesh.corner_distance(1));
    const double r1 = std::min(problem.fit_r_max, 0.9 * ray_extent(mesh, problem.fit_angle));
    if (r1 >= 10.0 * r0) {
      rep.fitted_gradient_exponent =
          fit_gradient_exponent(mesh, rep, problem.fit_angle, log_radii(r0, r1, config.fit_samples));
    }
  } catch (const std::exception&) {
  }
  return rep;
}

double error_ratio(double naive, double adapted) {
  return std::max(naive, kErrorFloor) / std::max(adapted, kErrorFloor);
}

Comparison compare_schemes(const CornerMesh& mesh, const CornerProblem& problem, const SolverConfig& config,
                           const FactorOptions& factor_options) {
  const ProblemData data = sample_problem(mesh, problem);
  const FaceFactors adapted_factors = singular_factors(mesh, problem.singular, factor_options);
  const FaceFactors plain = unit_factors(mesh);

  auto adapted = std::async(std::launch::async, [&] { return relax_solve(mesh, adapted_factors, data, problem, config); });
  Comparison c;
  c.naive = relax_solve(mesh, plain, data, problem, config);
  c.adapted = adapted.get();
  c.adapted_fallbacks = adapted_factors.fallbacks;
  c.near_corner_error_ratio = error_ratio(c.naive.near_corner_max_rel_error, c.adapted.near_corner_max_rel_error);
  for (int cells : {1, 2, 3, 4, 6}) {
    double rho = 0.0;
    try {
      rho = mesh.corner_distance(cells);
    } catch (const DomainError&) {
      continue;
    }
    const double n = near_corner_max(mesh, c.naive.rel_error_grid, rho);
    const double a = near_corner_max(mesh, c.adapted.rel_error_grid, rho);
    c.sensitivity.push_back({cells, rho, n, a, error_ratio(n, a)});
  }
  return c;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0 && y[k] > 0.0)) throw DomainError("loglog_slope: samples must be positive");
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_radii(double r_min, double r_max, int count) {
  if (!(r_min > 0.0 && r_max > r_min) || count < 2) throw DomainError("log_radii: bad range");
  std::vector<double> r(count);
  for (int k = 0; k < count; ++k) r[k] = r_min * std::pow(r_max / r_min, static_cast<double>(k) / (count - 1));
  r.back() = r_max;
  return r;
}

namespace {

void check_radii(const std::vector<double>& radii) {
  if (radii.size() < 4) throw DomainError("fit_gradient_exponent: need at least 4 radii");
  const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
  if (!(*lo > 0.0)) throw DomainError("fit_gradient_exponent: radii must be positive");
  if (*hi < 10.0 * *lo * (1.0 - 1e-12)) throw DomainError("fit_gradient_exponent: radii must span a decade");
}

}  // namespace

double fit_gradient_exponent(const FieldSampler& sampler, double angle, const std::vector<double>& radii) {
  check_radii(radii);
  std::vector<double> g;
  for (double r : radii) g.push_back(norm(sampler(r * std::cos(angle), r * std::sin(angle)).grad));
  return loglog_slope(radii, g);
}

double fit_gradient_exponent(const CornerMesh& mesh, const SolveReport& report, double angle,
                             const std::vector<double>& radii) {
  check_radii(radii);
  const auto& xs = mesh.x_nodes;
  const auto& ys = mesh.y_nodes;
  std::vector<double> g;
  for (double r : radii) {
    const double px = r * std::cos(angle);
    const double py = r * std::sin(angle);
    if (px < xs.front() || px > xs.back() || py < ys.front() || py > ys.back()) {
      throw DomainError("fit_gradient_exponent: sample outside the mesh");
    }
    const int i = std::clamp(static_cast<int>(std::upper_bound(xs.begin(), xs.end(), px) - xs.begin()) - 1, 0,
                             mesh.nx() - 2);
    const int j = std::clamp(static_cast<int>(std::upper_bound(ys.begin(), ys.end(), py) - ys.begin()) - 1, 0,
                             mesh.ny() - 2);
    for (int di = 0; di < 2; ++di) {
      for (int dj = 0; dj < 2; ++dj) {
        if (mesh.tag(i + di, j + dj) == NodeTag::exterior) {
          throw DomainError("fit_gradient_exponent: sample cell leaves the domain");
        }
      }
    }
    const double hx = xs[i + 1] - xs[i];
    const double hy = ys[j + 1] - ys[j];
    const double s = (px - xs[i]) / hx;
    const double t = (py - ys[j]) / hy;
    const auto& u = report.u_grid;
    const double u00 = u[mesh.index(i, j)], u10 = u[mesh.index(i + 1, j)];
    const double u01 = u[mesh.index(i, j + 1)], u11 = u[mesh.index(i + 1, j + 1)];
    const double ux = ((1 - t) * (u10 - u00) + t * (u11 - u01)) / hx;
    const double uy = ((1 - s) * (u01 - u00) + s * (u11 - u10)) / hy;
    g.push_back(std::hypot(ux, uy));
  }
  return loglog_slope(radii, g);
}

}  // namespace legcorner
