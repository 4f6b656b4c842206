#include "legcorner/hodograph.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "legcorner/errors.hpp"

namespace legcorner {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RadialDerivs {
  double value = 0.0, first = 0.0, second = 0.0;  // with respect to rho
};

RadialDerivs radial_derivatives(const HodographSolution& sol, const Mode& mode, double rho) {
  if (sol.coordinate == RadialCoordinate::r) {
    const SeriesDerivatives d = eval_series_derivatives(mode.radial, rho, sol.eval);
    return {d.value, d.first, d.second};
  }
  const double t = 1.0 / rho;
  const SeriesDerivatives d = eval_series_derivatives(mode.radial, t, sol.eval);
  // R(rho) = T(1/rho)
  return {d.value, -t * t * d.first, t * t * t * t * d.second + 2.0 * t * t * t * d.first};
}

OmegaEval eval_impl(const HodographSolution& sol, double xi, double eta, bool check_window) {
  const double rho = std::hypot(xi, eta);
  if (rho == 0.0) {
    if (sol.coordinate == RadialCoordinate::r) {
      bool smooth = true;
      for (const Mode& m : sol.modes) smooth = smooth && m.radial.nu > 2.0;
      if (smooth) return {};
    }
    throw DomainError("eval_omega: hodograph origin is singular for this solution");
  }
  if (rho < sol.rho_min || rho > sol.rho_max) {
    throw DomainError("eval_omega: rho=" + std::to_string(rho) + " outside the annulus [" +
                      std::to_string(sol.rho_min) + ", " + std::to_string(sol.rho_max) + "]");
  }
  double phi = std::atan2(eta, xi);
  if (check_window && !sol.window.contains(phi)) {
    throw DomainError("eval_omega: angle outside the hodograph sheet");
  }
  phi = sol.window.normalize(phi);

  // Polar derivatives of v(rho, phi).
  double v = 0, v_r = 0, v_p = 0, v_rr = 0, v_rp = 0, v_pp = 0;
  for (const Mode& m : sol.modes) {
    const RadialDerivs R = radial_derivatives(sol, m, rho);
    const double c = std::cos(m.gamma * phi);
    const double s = std::sin(m.gamma * phi);
    const double ang = m.cos_amp * c + m.sin_amp * s;
    const double ang_p = m.gamma * (-m.cos_amp * s + m.sin_amp * c);
    const double ang_pp = -m.gamma * m.gamma * ang;
    v += R.value * ang;
    v_r += R.first * ang;
    v_p += R.value * ang_p;
    v_rr += R.second * ang;
    v_rp += R.first * ang_p;
    v_pp += R.value * ang_pp;
  }

  const double c = xi / rho;
  const double s = eta / rho;
  OmegaEval out;
  out.omega = v;
  out.grad = {c * v_r - s * v_p / rho, s * v_r + c * v_p / rho};
  const double tangential = v_r / rho + v_pp / (rho * rho);
  const double mixed = v_rp / rho - v_p / (rho * rho);
  out.hess.xx = c * c * v_rr + s * s * tangential - 2.0 * s * c * mixed;
  out.hess.yy = s * s * v_rr + c * c * tangential + 2.0 * s * c * mixed;
  out.hess.xy = s * c * (v_rr - tangential) + (c * c - s * s) * mixed;
  return out;
}

double frob2(const Sym2& h) { return h.xx * h.xx + 2.0 * h.xy * h.xy + h.yy * h.yy; }

struct NewtonOutcome {
  Vec2 point;
  int iterations = 0;
  double residual = 0.0;
  double det = 0.0;
};

double residual_norm(const OmegaEval& e, const Vec2& target) {
  return std::hypot(e.grad.x - target.x, e.grad.y - target.y);
}

NewtonOutcome newton(const HodographSolution& sol, const Vec2& target, Vec2 z,
                     const InvertOptions& opt) {
  OmegaEval e = eval_impl(sol, z.x, z.y, false);
  const double anchor_det = e.hess.det();
  double res = residual_norm(e, target);
  const double goal = opt.tol * (1.0 + norm(target));
  int it = 0;

  auto step = [&](bool strict) -> bool {
    const double det = e.hess.det();
    if (!(std::abs(det) > opt.jtol * frob2(e.hess))) {
      throw SingularJacobian("invert_map: Legendre Jacobian vanishes near (" + std::to_string(z.x) +
                             ", " + std::to_string(z.y) + ")");
    }
    const double fx = e.grad.x - target.x;
    const double fy = e.grad.y - target.y;
    const Vec2 dz{-(e.hess.yy * fx - e.hess.xy * fy) / det, -(-e.hess.xy * fx + e.hess.xx * fy) / det};
    for (double lambda = 1.0; lambda >= 1.0 / 1024.0; lambda *= 0.5) {
      const Vec2 trial{z.x + lambda * dz.x, z.y + lambda * dz.y};
      OmegaEval et;
      try {
        et = eval_impl(sol, trial.x, trial.y, false);
      } catch (const DomainError&) {
        continue;
      }
      const double rt = residual_norm(et, target);
      if (rt < res || (!strict && rt <= res)) {
        z = trial;
        e = et;
        res = rt;
        return true;
      }
      if (!strict) return false;
    }
    return false;
  };

  while (res > goal) {
    if (it >= opt.max_iter) {
      throw ConvergenceError("invert_map: no convergence after " + std::to_string(opt.max_iter) +
                             " Newton iterations (residual " + std::to_string(res) + ")");
    }
    ++it;
    if (!step(true)) {
      throw ConvergenceError("invert_map: damped Newton step failed to reduce the residual");
    }
  }
  if (opt.polish && res > 0.0) {
    try {
      step(false);
    } catch (const SingularJacobian&) {
    }
  }
  const double det = e.hess.det();
  if (anchor_det != 0.0 && det != 0.0 && std::signbit(det) != std::signbit(anchor_det)) {
    throw MultivaluedMap("invert_map: root has a Jacobian sign different from its anchor");
  }
  return {z, it, res, det};
}

// Dominant term near hodograph infinity for t-coordinate solutions: the
// mode with the smallest exponent, provided it is homogeneous (nu = |gamma|).
const Mode* leading_singular_mode(const HodographSolution& sol) {
  if (sol.coordinate != RadialCoordinate::t) return nullptr;
  const Mode* best = nullptr;
  for (const Mode& m : sol.modes) {
    if (m.cos_amp == 0.0 && m.sin_amp == 0.0) continue;
    if (!best || m.radial.nu < best->radial.nu) best = &m;
  }
  if (!best || best->gamma <= 0.0) return nullptr;
  if (std::abs(best->radial.nu - best->gamma) > 1e-12 * (1.0 + best->gamma)) return nullptr;
  return best;
}

// Closed-form preimages of the leading term K rho^-g (a cos g phi + b sin g phi):
// x + i y = -g K (a - i b) rho^-(g+1) exp(i (g+1) phi).
std::vector<Vec2> asymptotic_candidates(const HodographSolution& sol, const Mode& m, const Vec2& target) {
  const double g = m.gamma;
  const double k = m.radial.coeffs.front();
  const std::complex<double> amp = -g * k * std::complex<double>(m.cos_amp, -m.sin_amp);
  const double rbar = norm(target);
  if (rbar == 0.0) throw DomainError("invert_map: the corner point has no finite preimage");
  const double rho = std::pow(std::abs(amp) / rbar, 1.0 / (g + 1.0));
  const double theta = std::atan2(target.y, target.x);
  const double base = theta - std::arg(amp);

  std::vector<double> phis;
  const int jmax = static_cast<int>(std::ceil(g + 2.0)) + 2;
  for (int j = -jmax; j <= jmax; ++j) {
    const double phi = (base + kTwoPi * j) / (g + 1.0);
    if (phi >= sol.window.lo - 1e-9 && phi <= sol.window.hi + 1e-9) phis.push_back(phi);
  }
  // The two edges of a sheet that covers the whole physical angle map to
  // the same ray; keep the lower edge.
  std::sort(phis.begin(), phis.end());
  const double width = sol.window.hi - sol.window.lo;
  if (phis.size() == 2 && phis[1] - phis[0] >= width - 1e-8) phis.pop_back();

  std::vector<Vec2> out;
  for (double phi : phis) out.push_back({rho * std::cos(phi), rho * std::sin(phi)});
  return out;
}

InverseResult finish(const HodographSolution& sol, const NewtonOutcome& n) {
  if (!sol.window.contains(std::atan2(n.point.y, n.point.x), 1e-8)) {
    throw DomainError("invert_map: preimage falls outside the hodograph sheet");
  }
  return {n.point.x, n.point.y, n.iterations, n.residual, n.det};
}

InverseResult continuation(const HodographSolution& sol, const Mode& lead, const Vec2& target,
                           const InvertOptions& opt) {
  // Walk in from a point much closer to the corner, where the leading term
  // dominates, doubling the scale each step.
  double s = 1.0 / 1024.0;
  std::vector<Vec2> c = asymptotic_candidates(sol, lead, {target.x * s, target.y * s});
  if (c.size() != 1) throw MultivaluedMap("invert_map: ambiguous continuation anchor");
  NewtonOutcome n = newton(sol, {target.x * s, target.y * s}, c.front(), opt);
  double factor = 2.0;
  while (s < 1.0) {
    const double next = std::min(1.0, s * factor);
    try {
      n = newton(sol, {target.x * next, target.y * next}, n.point, opt);
      s = next;
      factor = std::min(2.0, factor * factor);
    } catch (const ConvergenceError&) {
      factor = std::sqrt(factor);
      if (factor < 1.0001) throw;
    }
  }
  return finish(sol, n);
}

InverseResult grid_search(const HodographSolution& sol, const Vec2& target, const InvertOptions& opt) {
  double lo = sol.lower_rho();
  double hi = sol.upper_rho();
  if (!std::isfinite(hi)) hi = std::max(1.0, lo) * 1e3;
  if (lo <= 0.0) lo = hi * 1e-4;
  constexpr int nr = 48;
  constexpr int na = 72;
  const double a0 = sol.window.lo;
  const double a1 = sol.window.full() ? sol.window.lo + kTwoPi : sol.window.hi;

  std::vector<double> vals(nr * na, std::numeric_limits<double>::infinity());
  std::vector<Vec2> pts(nr * na);
  for (int i = 0; i < nr; ++i) {
    const double rho = lo * std::pow(hi / lo, (i + 0.5) / nr);
    for (int j = 0; j < na; ++j) {
      const double phi = a0 + (a1 - a0) * (j + 0.5) / na;
      const Vec2 p{rho * std::cos(phi), rho * std::sin(phi)};
      pts[i * na + j] = p;
      try {
        vals[i * na + j] = residual_norm(eval_impl(sol, p.x, p.y, false), target);
      } catch (const std::exception&) {
      }
    }
  }
  std::vector<int> minima;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < na; ++j) {
      const double v = vals[i * na + j];
      if (!std::isfinite(v)) continue;
      bool local = true;
      for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        const int ii = i + di;
        int jj = j + dj;
        if (sol.window.full()) jj = (jj + na) % na;
        if (ii < 0 || ii >= nr || jj < 0 || jj >= na) continue;
        if (vals[ii * na + jj] < v) local = false;
      }
      if (local) minima.push_back(i * na + j);
    }
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  if (minima.size() > 6) minima.resize(6);

  std::vector<NewtonOutcome> roots;
  for (int idx : minima) {
    try {
      NewtonOutcome n = newton(sol, target, pts[idx], opt);
      if (!sol.window.contains(std::atan2(n.point.y, n.point.x), 1e-8)) continue;
      const bool dup = std::any_of(roots.begin(), roots.end(), [&](const NewtonOutcome& r) {
        return std::hypot(r.point.x - n.point.x, r.point.y - n.point.y) <=
               1e-6 * (1.0 + norm(n.point));
      });
      if (!dup) roots.push_back(n);
    } catch (const std::exception&) {
    }
  }
  if (roots.empty()) throw ConvergenceError("invert_map: grid search found no preimage");
  if (roots.size() > 1) {
    throw MultivaluedMap("invert_map: " + std::to_string(roots.size()) +
                         " distinct preimages on the sheet");
  }
  return finish(sol, roots.front());
}

}  // namespace

double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

Mode shifted_sine_mode(double gamma, RadialSeries radial, double amplitude, double phase) {
  // A sin(g (phi - p)) = A cos(g p) sin(g phi) - A sin(g p) cos(g phi)
  Mode m;
  m.gamma = gamma;
  m.radial = std::move(radial);
  m.cos_amp = -amplitude * std::sin(gamma * phase);
  m.sin_amp = amplitude * std::cos(gamma * phase);
  return m;
}

bool AngularWindow::contains(double phi, double tol) const {
  if (full()) return true;
  const double p = normalize(phi);
  return p <= hi + tol || p - kTwoPi >= lo - tol;
}

double AngularWindow::normalize(double phi) const {
  double p = std::fmod(phi - lo, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return lo + p;
}

void HodographSolution::validate() const {
  if (modes.empty()) throw DomainError("hodograph solution has no modes");
  const SeriesVariable want = coordinate == RadialCoordinate::r ? SeriesVariable::r : SeriesVariable::t;
  for (const Mode& m : modes) {
    if (m.radial.variable != want) {
      throw DomainError("hodograph solution mixes radial variables");
    }
    if (!std::isfinite(m.cos_amp) || !std::isfinite(m.sin_amp)) {
      throw DomainError("hodograph mode amplitudes must be finite");
    }
  }
  if (!(window.hi > window.lo) || window.hi - window.lo > kTwoPi + 1e-12) {
    throw DomainError("hodograph window must satisfy lo < hi <= lo + 2 pi");
  }
}

double HodographSolution::lower_rho() const {
  double lo = rho_min;
  if (coordinate == RadialCoordinate::t) {
    for (const Mode& m : modes) {
      if (std::isfinite(m.radial.radius)) lo = std::max(lo, 1.0 / (eval.safety * m.radial.radius));
    }
  }
  return lo;
}

double HodographSolution::upper_rho() const {
  double hi = rho_max;
  if (coordinate == RadialCoordinate::r) {
    for (const Mode& m : modes) hi = std::min(hi, eval.safety * m.radial.radius);
  }
  return hi;
}

OmegaEval eval_omega(const HodographSolution& sol, double xi, double eta) {
  sol.validate();
  return eval_impl(sol, xi, eta, true);
}

InverseResult invert_map(const HodographSolution& sol, double x, double y, std::optional<Vec2> seed,
                         const InvertOptions& options) {
  sol.validate();
  const Vec2 target{x, y};
  if (seed) return finish(sol, newton(sol, target, *seed, options));

  if (const Mode* lead = leading_singular_mode(sol)) {
    const std::vector<Vec2> cands = asymptotic_candidates(sol, *lead, target);
    if (cands.empty()) {
      throw DomainError("invert_map: (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is not in the image of the hodograph sheet");
    }
    if (cands.size() > 1) {
      throw MultivaluedMap("invert_map: " + std::to_string(cands.size()) +
                           " leading-order preimages on the sheet");
    }
    try {
      return finish(sol, newton(sol, target, cands.front(), options));
    } catch (const ConvergenceError&) {
    } catch (const DomainError&) {
    }
    return continuation(sol, *lead, target, options);
  }
  return grid_search(sol, target, options);
}

PhysicalField to_physical(const HodographSolution& sol, double x, double y, std::optional<Vec2> seed,
                          const InvertOptions& options) {
  const InverseResult inv = invert_map(sol, x, y, seed, options);
  const OmegaEval e = eval_impl(sol, inv.xi, inv.eta, false);
  const double det = e.hess.det();
  PhysicalField f;
  f.u = x * inv.xi + y * inv.eta - e.omega;
  f.grad = {inv.xi, inv.eta};
  f.hessian = {e.hess.yy / det, -e.hess.xy / det, e.hess.xx / det};
  f.source_point = {x, y};
  return f;
}

PhysicalField arctan_reference(double c1, double c2, double x, double y) {
  const double r2 = x * x + y * y;
  if (r2 == 0.0) throw DomainError("arctan_reference: undefined at the origin");
  const double r4 = r2 * r2;
  PhysicalField f;
  f.u = c1 * std::atan2(y, x) + c2;
  f.grad = {-c1 * y / r2, c1 * x / r2};
  f.hessian = {2.0 * c1 * x * y / r4, c1 * (y * y - x * x) / r4, -2.0 * c1 * x * y / r4};
  f.source_point = {x, y};
  return f;
}

FieldSampler make_sampler(HodographSolution sol, InvertOptions options) {
  sol.validate();
  return [sol = std::move(sol), options](double x, double y) {
    return to_physical(sol, x, y, std::nullopt, options);
  };
}

double residual_nonlinear(const PermeabilityParams& params, const FieldSampler& sampler, double x,
                          double y, double h) {
  if (!(h > 0.0)) throw DomainError("residual_nonlinear: step must be positive");
  auto flux = [&](double px, double py) {
    const PhysicalField f = sampler(px, py);
    const double m = mu(params, norm(f.grad));
    return Vec2{m * f.grad.x, m * f.grad.y};
  };
  const Vec2 e = flux(x + h, y);
  const Vec2 w = flux(x - h, y);
  const Vec2 n = flux(x, y + h);
  const Vec2 s = flux(x, y - h);
  return (e.x - w.x + n.y - s.y) / (2.0 * h);
}

HodographSolution singular_cos_solution(const PermeabilityParams& params, double gamma,
                                        double amplitude, int kmax) {
  const SeriesKind kind = params.m1 == 0.0 ? SeriesKind::singular_m0 : SeriesKind::singular_full;
  HodographSolution sol;
  sol.coordinate = RadialCoordinate::t;
  Mode m;
  m.gamma = gamma;
  m.radial = build_series(kind, params, ModeParams::singular(gamma, Branch::plus), kmax);
  m.cos_amp = amplitude;
  sol.modes.push_back(std::move(m));
  const double half = kPi / (gamma + 1.0);
  sol.window = {-half, half};
  return sol;
}

}  // namespace legcorner
