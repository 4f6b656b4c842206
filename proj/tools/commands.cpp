#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "legcorner/corner_solver.hpp"
#include "legcorner/errors.hpp"
#include "legcorner/hodograph.hpp"
#include "legcorner/series.hpp"

namespace legcorner::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json defaults() {
  const double q = 0.75 * std::numbers::pi;
  return json::parse(R"({
    "params": {"m0": 0.1, "m1": 0.01},
    "series": {"kind": "singular_full", "gamma": 3, "branch": "plus", "nu": null, "n": 2,
               "terms": 64, "samples": 101, "x_min": null, "x_max": null, "overlay_m1": []},
    "surface": {"solution": {"type": "singular", "gamma": 3, "amplitude": 1, "n": 2, "nu": null,
                             "branch": "plus", "amplitudes": [1, 1], "terms": 64},
                "sampling": "physical", "x": [-1, 1, 41], "y": [-1, 1, 41],
                "rho": [null, null, 40], "phi": 73, "with_gradient": true},
    "solve": {"problem": {"type": "manufactured", "amplitudes": [1, 1], "c1": 1, "c2": 0,
                          "a": 1, "b": 0.5, "c": 0.25},
              "mesh": {"x_min": -0.04, "x_max": 0.04, "y_min": -0.04, "y_max": 0.04, "nx": 129, "ny": 129,
                       "grading": 1, "geometry": "l_shape", "r_in": 0.05, "r_out": 1,
                       "theta_lo": null, "theta_hi": null},
              "solver": {"sor_omega": 1.9, "inner_tol": 1e-10, "outer_tol": 1e-9, "max_inner": 200000,
                         "max_outer": 200, "damping": 0.5, "near_cells": 3, "rho_near": null,
                         "fit_samples": 8},
              "grids": true},
    "sweep": {"key": "solve.mesh.nx", "values": [33, 65, 129], "threads": 0}
  })")
      .patch(json::array({{{"op", "replace"}, {"path", "/solve/mesh/theta_lo"}, {"value", -q}},
                          {{"op", "replace"}, {"path", "/solve/mesh/theta_hi"}, {"value", q}}}));
}

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing config key '") + key + "'");
  return j.at(key);
}

double num(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

std::string text(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<double> maybe_num(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return num(j, key);
}

PermeabilityParams params_of(const json& cfg) {
  const json& p = need(cfg, "params");
  PermeabilityParams out{num(p, "m0"), num(p, "m1")};
  out.validate();
  return out;
}

Branch branch_of(const json& j) {
  const std::string b = text(j, "branch");
  if (b == "plus") return Branch::plus;
  if (b == "minus") return Branch::minus;
  throw ConfigError("branch must be 'plus' or 'minus'");
}

SeriesKind kind_of(const std::string& k) {
  if (k == "singular_m0") return SeriesKind::singular_m0;
  if (k == "singular_full") return SeriesKind::singular_full;
  if (k == "regular") return SeriesKind::regular;
  if (k == "degenerate") return SeriesKind::degenerate;
  if (k == "polynomial") return SeriesKind::polynomial;
  throw ConfigError("unknown series kind '" + k + "'");
}

RadialSeries series_of(const json& s, const PermeabilityParams& params) {
  const SeriesKind kind = kind_of(text(s, "kind"));
  const int terms = integer(s, "terms");
  switch (kind) {
    case SeriesKind::polynomial:
      return polynomial_series(jacobi_polynomial(integer(s, "n"), params));
    case SeriesKind::singular_m0:
    case SeriesKind::singular_full:
      return build_series(kind, params, ModeParams::singular(num(s, "gamma"), branch_of(s)), terms);
    case SeriesKind::regular:
      return build_series(kind, params, ModeParams::regular(num(s, "gamma"), branch_of(s)), terms);
    case SeriesKind::degenerate: {
      const auto nu = maybe_num(s, "nu");
      if (!nu) throw ConfigError("degenerate series needs 'nu' (0 or 1)");
      return build_series(kind, params, ModeParams::degenerate(num(s, "gamma"), *nu), terms);
    }
  }
  throw ConfigError("unknown series kind");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path.string());
  f << content;
  if (!f) throw ConfigError("cannot write output file " + path.string());
}

std::string csv_text(const CsvTable& t) {
  std::ostringstream s;
  write_csv(s, t);
  return s.str();
}

// Shared sample grid of the series command.
struct SeriesSetup {
  PermeabilityParams params;
  RadialSeries series;
  std::vector<double> xs;
};

SeriesSetup series_setup(const json& cfg) {
  const json& s = need(cfg, "series");
  SeriesSetup st{params_of(cfg), {}, {}};
  st.series = series_of(s, st.params);
  const int samples = integer(s, "samples");
  if (samples < 2) throw ConfigError("series.samples must be at least 2");
  const EvalOptions eval;
  const double limit = eval.safety * st.series.radius;
  double x_max = maybe_num(s, "x_max").value_or(std::isfinite(limit) ? 0.9 * st.series.radius : 1.0);
  double x_min = maybe_num(s, "x_min").value_or(st.series.nu < 0.0 ? x_max / samples : 0.0);
  if (!(x_max > x_min) || x_min < 0.0) throw ConfigError("series sample range must satisfy 0 <= x_min < x_max");
  if (x_max > limit) {
    throw OutOfRadius("series: sample " + format_number(x_max) + " lies outside the convergence radius " +
                      format_number(st.series.radius) + " (evaluation allowed below " + format_number(limit) + ")");
  }
  for (int k = 0; k < samples; ++k) st.xs.push_back(x_min + (x_max - x_min) * k / (samples - 1));
  st.xs.back() = x_max;
  return st;
}

// Solution assembled for the surface command.
HodographSolution surface_solution(const json& cfg) {
  const PermeabilityParams params = params_of(cfg);
  const json& sol = need(need(cfg, "surface"), "solution");
  const std::string type = text(sol, "type");
  const int terms = integer(sol, "terms");
  HodographSolution h;
  auto cos_mode = [&](double gamma, RadialSeries radial, double amp) {
    Mode m;
    m.gamma = gamma;
    m.radial = std::move(radial);
    m.cos_amp = amp;
    h.modes.push_back(std::move(m));
  };
  if (type == "quadratic") {
    cos_mode(0.0, polynomial_series(2.0, {0.5}), 1.0);
  } else if (type == "singular") {
    h = singular_cos_solution(params, num(sol, "gamma"), num(sol, "amplitude"), terms);
  } else if (type == "polynomial") {
    const int n = integer(sol, "n");
    cos_mode(n, polynomial_series(jacobi_polynomial(n, params)), num(sol, "amplitude"));
  } else if (type == "regular") {
    const double g = num(sol, "gamma");
    cos_mode(g, build_series(SeriesKind::regular, params, ModeParams::regular(g, branch_of(sol)), terms),
             num(sol, "amplitude"));
  } else if (type == "degenerate") {
    const double g = num(sol, "gamma");
    const auto nu = maybe_num(sol, "nu");
    if (!nu) throw ConfigError("degenerate surface needs 'nu'");
    cos_mode(g, build_series(SeriesKind::degenerate, params, ModeParams::degenerate(g, *nu), terms),
             num(sol, "amplitude"));
  } else if (type == "manufactured") {
    const json& a = need(sol, "amplitudes");
    if (!a.is_array() || a.size() != 2) throw ConfigError("amplitudes must be a pair");
    h = manufactured_solution(params, a[0].get<double>(), a[1].get<double>(), terms);
  } else {
    throw ConfigError("unknown surface solution type '" + type + "'");
  }
  h.validate();
  return h;
}

struct Axis {
  double lo, hi;
  int n;
};

Axis axis_of(const json& j, const char* key) {
  const json& a = need(j, key);
  if (!a.is_array() || a.size() != 3 || !a[2].is_number_integer()) {
    throw ConfigError(std::string("'") + key + "' must be [lo, hi, count]");
  }
  Axis ax{a[0].is_null() ? kNaN : a[0].get<double>(), a[1].is_null() ? kNaN : a[1].get<double>(), a[2].get<int>()};
  if (ax.n < 2) throw ConfigError(std::string("'") + key + "' needs at least 2 samples");
  return ax;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
  v.back() = hi;
  return v;
}

// Point status codes of the surface output.
enum Status { kOk = 0, kOutOfDomain = 1, kNoConvergence = 2, kSingular = 3, kMultivalued = 4 };

MeshSpec mesh_of(const json& m) {
  MeshSpec s;
  s.x_min = num(m, "x_min");
  s.x_max = num(m, "x_max");
  s.y_min = num(m, "y_min");
  s.y_max = num(m, "y_max");
  s.nx = integer(m, "nx");
  s.ny = integer(m, "ny");
  s.grading = num(m, "grading");
  const std::string g = text(m, "geometry");
  if (g == "box") {
    s.geometry = Geometry::box;
  } else if (g == "l_shape") {
    s.geometry = Geometry::l_shape;
  } else if (g == "sector_annulus") {
    s.geometry = Geometry::sector_annulus;
  } else {
    throw ConfigError("unknown mesh geometry '" + g + "'");
  }
  s.r_in = num(m, "r_in");
  s.r_out = num(m, "r_out");
  s.theta_lo = num(m, "theta_lo");
  s.theta_hi = num(m, "theta_hi");
  s.validate();
  return s;
}

SolverConfig solver_of(const json& s) {
  SolverConfig c;
  c.sor_omega = num(s, "sor_omega");
  c.inner_tol = num(s, "inner_tol");
  c.outer_tol = num(s, "outer_tol");
  c.max_inner = integer(s, "max_inner");
  c.max_outer = integer(s, "max_outer");
  c.damping = num(s, "damping");
  c.near_cells = integer(s, "near_cells");
  c.rho_near = maybe_num(s, "rho_near");
  c.fit_samples = integer(s, "fit_samples");
  if (!(c.inner_tol > 0 && c.outer_tol > 0 && c.max_inner > 0 && c.max_outer > 0)) {
    throw ConfigError("solver tolerances and limits must be positive");
  }
  if (!(c.damping > 0 && c.damping <= 1)) throw ConfigError("solver.damping must lie in (0, 1]");
  if (c.near_cells < 1 || c.fit_samples < 4) throw ConfigError("near_cells >= 1 and fit_samples >= 4 required");
  return c;
}

CornerProblem problem_of(const json& cfg) {
  const PermeabilityParams params = params_of(cfg);
  const json& p = need(need(cfg, "solve"), "problem");
  const std::string type = text(p, "type");
  if (type == "manufactured") {
    const json& a = need(p, "amplitudes");
    if (!a.is_array() || a.size() != 2) throw ConfigError("amplitudes must be a pair");
    return manufactured_problem(params, a[0].get<double>(), a[1].get<double>());
  }
  if (type == "arctan") return arctan_problem(params, num(p, "c1"), num(p, "c2"));
  if (type == "linear") return linear_problem(params, num(p, "a"), num(p, "b"), num(p, "c"));
  throw ConfigError("unknown problem type '" + type + "'");
}

double ray_extent(const MeshSpec& m, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  double t = std::numeric_limits<double>::infinity();
  if (c > 1e-15) t = std::min(t, m.x_max / c);
  if (c < -1e-15) t = std::min(t, m.x_min / c);
  if (s > 1e-15) t = std::min(t, m.y_max / s);
  if (s < -1e-15) t = std::min(t, m.y_min / s);
  return t;
}

}  // namespace

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key.path=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json* node = &config;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("empty component in override key " + key);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    json& next = (*node)[part];
    if (!next.is_object()) next = json::object();
    node = &next;
    start = dot + 1;
  }
}

json load_config(const Options& options) {
  json cfg = defaults();
  if (!options.config_path.empty()) {
    std::ifstream f(options.config_path);
    if (!f) throw ConfigError("cannot read config file " + options.config_path);
    json user = json::parse(f, nullptr, false, true);
    if (user.is_discarded() || !user.is_object()) throw ConfigError("config file is not a JSON object");
    cfg.merge_patch(user);
  }
  for (const auto& s : options.sets) apply_override(cfg, s);
  return cfg;
}

CsvTable series_table(const json& cfg) {
  const SeriesSetup st = series_setup(cfg);
  const json& s = need(cfg, "series");
  CsvTable t;
  const bool in_t = st.series.variable == SeriesVariable::t;
  t.header = {in_t ? "t" : "r", "value", "first", "second", "tail_bound"};

  std::vector<RadialSeries> overlays;
  if (s.contains("overlay_m1")) {
    for (const auto& m1 : s.at("overlay_m1")) {
      PermeabilityParams p = st.params;
      p.m1 = m1.get<double>();
      json s2 = s;
      if (s2.at("kind") == "singular_m0" && p.m1 != 0.0) s2["kind"] = "singular_full";
      overlays.push_back(series_of(s2, p));
      std::ostringstream label;
      label.imbue(std::locale::classic());
      label << "value_m1_" << p.m1;
      t.header.push_back(label.str());
    }
  }
  for (double x : st.xs) {
    const SeriesDerivatives d = eval_series_derivatives(st.series, x);
    std::vector<double> row = {x, d.value, d.first, d.second, d.trunc_error};
    for (const auto& o : overlays) {
      double v = kNaN;
      try {
        v = eval_series(o, x).value;
      } catch (const OutOfRadius&) {
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

json series_document(const json& cfg) {
  const SeriesSetup st = series_setup(cfg);
  const CsvTable t = series_table(cfg);
  json doc;
  doc["variable"] = st.series.variable == SeriesVariable::t ? "t" : "r";
  doc["kind"] = need(cfg, "series").at("kind");
  doc["nu"] = number_json(st.series.nu);
  doc["radius"] = number_json(st.series.radius);
  doc["coefficients"] = array_json(st.series.coeffs);
  json cols = json::object();
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    std::vector<double> col;
    for (const auto& row : t.rows) col.push_back(row[c]);
    cols[t.header[c]] = array_json(col);
  }
  doc["columns"] = std::move(cols);
  return doc;
}

CsvTable surface_table(const json& cfg) {
  const json& s = need(cfg, "surface");
  const HodographSolution sol = surface_solution(cfg);
  const bool grad = need(s, "with_gradient").get<bool>();
  const std::string sampling = text(s, "sampling");
  CsvTable t;
  t.header = {"x", "y", "u"};
  if (grad) {
    t.header.push_back("u_x");
    t.header.push_back("u_y");
  }
  t.header.push_back("status");
  auto push = [&](double x, double y, const PhysicalField* f, int status) {
    std::vector<double> row = {x, y, f ? f->u : kNaN};
    if (grad) {
      row.push_back(f ? f->grad.x : kNaN);
      row.push_back(f ? f->grad.y : kNaN);
    }
    row.push_back(status);
    t.rows.push_back(std::move(row));
  };

  if (sampling == "physical") {
    const Axis ax = axis_of(s, "x");
    const Axis ay = axis_of(s, "y");
    if (!(std::isfinite(ax.lo) && std::isfinite(ax.hi) && std::isfinite(ay.lo) && std::isfinite(ay.hi))) {
      throw ConfigError("physical sampling needs finite x and y ranges");
    }
    for (double y : linspace(ay.lo, ay.hi, ay.n)) {
      for (double x : linspace(ax.lo, ax.hi, ax.n)) {
        try {
          const PhysicalField f = to_physical(sol, x, y);
          push(x, y, &f, kOk);
        } catch (const DomainError&) {
          push(x, y, nullptr, kOutOfDomain);
        } catch (const ConvergenceError&) {
          push(x, y, nullptr, kNoConvergence);
        } catch (const SingularJacobian&) {
          push(x, y, nullptr, kSingular);
        } catch (const MultivaluedMap&) {
          push(x, y, nullptr, kMultivalued);
        }
      }
    }
  } else if (sampling == "hodograph") {
    Axis ar = axis_of(s, "rho");
    double lo = std::isfinite(ar.lo) ? ar.lo : sol.lower_rho();
    double hi = std::isfinite(ar.hi) ? ar.hi : sol.upper_rho();
    if (!std::isfinite(hi)) hi = std::max(1.0, 10.0 * lo);
    if (!(lo > 0.0)) lo = hi * 1e-3;
    if (!(hi > lo)) throw ConfigError("empty hodograph radius range");
    const int nphi = integer(s, "phi");
    if (nphi < 2) throw ConfigError("surface.phi needs at least 2 samples");
    const double a0 = sol.window.lo;
    const double a1 = sol.window.full() ? sol.window.lo + 2.0 * std::numbers::pi : sol.window.hi;
    for (int i = 0; i < ar.n; ++i) {
      const double rho = lo * std::pow(hi / lo, static_cast<double>(i) / (ar.n - 1));
      for (double phi : linspace(a0, a1, nphi)) {
        const double xi = rho * std::cos(phi);
        const double eta = rho * std::sin(phi);
        try {
          const OmegaEval e = eval_omega(sol, xi, eta);
          PhysicalField f;
          f.u = e.grad.x * xi + e.grad.y * eta - e.omega;
          f.grad = {xi, eta};
          push(e.grad.x, e.grad.y, &f, kOk);
        } catch (const DomainError&) {
        }
      }
    }
  } else {
    throw ConfigError("surface.sampling must be 'physical' or 'hodograph'");
  }
  return t;
}

json surface_document(const json& cfg) {
  const json& s = need(cfg, "surface");
  const CsvTable t = surface_table(cfg);
  json doc;
  doc["sampling"] = s.at("sampling");
  doc["solution"] = s.at("solution");
  if (s.at("sampling") == "physical") {
    const Axis ax = axis_of(s, "x");
    const Axis ay = axis_of(s, "y");
    doc["x"] = array_json(linspace(ax.lo, ax.hi, ax.n));
    doc["y"] = array_json(linspace(ay.lo, ay.hi, ay.n));
    doc["layout"] = "row-major, index j * nx + i";
    for (std::size_t c = 2; c < t.header.size(); ++c) {
      std::vector<double> col;
      for (const auto& row : t.rows) col.push_back(row[c]);
      doc[t.header[c]] = array_json(col);
    }
  } else {
    json cols = json::object();
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      std::vector<double> col;
      for (const auto& row : t.rows) col.push_back(row[c]);
      cols[t.header[c]] = array_json(col);
    }
    doc["columns"] = std::move(cols);
  }
  return doc;
}

json solve_document(const json& cfg, bool with_grids) {
  const json& s = need(cfg, "solve");
  const MeshSpec spec = mesh_of(need(s, "mesh"));
  const SolverConfig config = solver_of(need(s, "solver"));
  const CornerProblem problem = problem_of(cfg);
  const CornerMesh mesh = build_mesh(spec);
  const Comparison c = compare_schemes(mesh, problem, config);

  json doc;
  doc["problem"] = problem.name;
  doc["params"] = {{"m0", problem.params.m0}, {"m1", problem.params.m1}};
  doc["near_corner_error_ratio"] = number_json(c.near_corner_error_ratio);
  doc["comparison"] = comparison_json(c, with_grids);
  double ref_exp = kNaN;
  try {
    const double ext = ray_extent(spec, problem.fit_angle);
    const double r0 = std::max(problem.fit_r_min, 1e-3 * ext);
    const double r1 = std::min(problem.fit_r_max, 0.9 * ext);
    ref_exp = fit_gradient_exponent(problem.reference, problem.fit_angle, log_radii(r0, r1, config.fit_samples));
  } catch (const std::exception&) {
  }
  doc["reference_gradient_exponent"] = number_json(ref_exp);
  doc["expected_gradient_exponent"] = number_json(problem.expected_exponent);
  if (with_grids) doc["mesh"] = mesh_json(mesh);
  return doc;
}

json sweep_document(const json& cfg) {
  const json& sw = need(cfg, "sweep");
  const std::string key = text(sw, "key");
  const json& values = need(sw, "values");
  if (!values.is_array() || values.empty()) throw ConfigError("sweep.values must be a non-empty array");
  int threads = integer(sw, "threads");
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::vector<json> configs;
  for (const auto& v : values) {
    json c = cfg;
    apply_override(c, key + "=" + v.dump());
    configs.push_back(std::move(c));
  }
  std::vector<json> results(configs.size());
  for (std::size_t start = 0; start < configs.size(); start += threads) {
    std::vector<std::future<json>> batch;
    const std::size_t end = std::min(configs.size(), start + static_cast<std::size_t>(threads));
    for (std::size_t k = start; k < end; ++k) {
      batch.push_back(std::async(std::launch::async, [&configs, k] { return solve_document(configs[k], false); }));
    }
    for (std::size_t k = start; k < end; ++k) results[k] = batch[k - start].get();
  }
  json doc;
  doc["key"] = key;
  json runs = json::array();
  for (std::size_t k = 0; k < results.size(); ++k) runs.push_back({{"value", values[k]}, {"result", results[k]}});
  doc["runs"] = std::move(runs);
  return doc;
}

int run(const Options& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.format != "csv" && options.format != "json") throw ConfigError("--format must be csv or json");
    const json cfg = load_config(options);
    std::filesystem::create_directories(options.out_dir);
    const std::filesystem::path dir(options.out_dir);
    std::filesystem::path written;
    if (options.command == "series") {
      if (options.format == "csv") {
        written = dir / "series.csv";
        write_file(written, csv_text(series_table(cfg)));
      } else {
        written = dir / "series.json";
        write_file(written, dump_json(series_document(cfg)));
      }
    } else if (options.command == "surface") {
      if (options.format == "csv") {
        written = dir / "surface.csv";
        write_file(written, csv_text(surface_table(cfg)));
      } else {
        written = dir / "surface.json";
        write_file(written, dump_json(surface_document(cfg)));
      }
    } else if (options.command == "solve") {
      const json doc = solve_document(cfg, need(need(cfg, "solve"), "grids").get<bool>());
      written = dir / "solve.json";
      write_file(written, dump_json(doc));
      out << "near_corner_error_ratio " << format_number(doc.at("near_corner_error_ratio").is_null()
                                                               ? kNaN
                                                               : doc.at("near_corner_error_ratio").get<double>())
          << '\n';
    } else if (options.command == "sweep") {
      written = dir / "sweep.json";
      write_file(written, dump_json(sweep_document(cfg)));
    } else {
      throw ConfigError("unknown command '" + options.command + "'");
    }
    out << "wrote " << written.string() << '\n';
    if (options.seed_free) out << "seed-free: no random numbers were drawn\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OutOfRadius& e) {
    err << "out of radius: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedConfiguration& e) {
    err << "unsupported configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace legcorner::cli
