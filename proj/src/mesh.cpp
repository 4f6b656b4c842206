#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "legcorner/corner_solver.hpp"
#include "legcorner/errors.hpp"

namespace legcorner {

namespace {

// Node offsets 0 < d_1 < ... < d_n = length from the corner outward, with
// cell sizes growing by 1/q away from the corner.
std::vector<double> graded_side(double length, int cells, double q) {
  std::vector<double> d(cells + 1, 0.0);
  if (cells == 0) return d;
  if (q == 1.0) {
    for (int k = 1; k <= cells; ++k) d[k] = length * k / cells;
  } else {
    const double outer = length * (1.0 - q) / (1.0 - std::pow(q, cells));
    for (int m = 0; m < cells; ++m) d[m + 1] = d[m] + outer * std::pow(q, cells - 1 - m);
  }
  d[cells] = length;
  return d;
}

std::vector<double> axis_nodes(double lo, double hi, int n, double q) {
  int minus = 0;
  if (lo < 0.0 && hi > 0.0) {
    minus = static_cast<int>(std::lround((n - 1) * (-lo) / (hi - lo)));
    minus = std::clamp(minus, 1, n - 2);
  } else if (hi == 0.0) {
    minus = n - 1;
  }
  const int plus = n - 1 - minus;
  const std::vector<double> left = graded_side(-lo, minus, q);
  const std::vector<double> right = graded_side(hi, plus, q);
  std::vector<double> out;
  out.reserve(n);
  for (int k = minus; k >= 1; --k) out.push_back(-left[k]);
  out.push_back(0.0);
  for (int k = 1; k <= plus; ++k) out.push_back(right[k]);
  return out;
}

bool inside(const MeshSpec& s, double x, double y) {
  switch (s.geometry) {
    case Geometry::box:
      return true;
    case Geometry::l_shape:
      return !(x > 0.0 && y < 0.0);
    case Geometry::sector_annulus: {
      const double r = std::hypot(x, y);
      const double eps = 1e-12 * (1.0 + s.r_out);
      if (r < s.r_in - eps || r > s.r_out + eps) return false;
      if (r == 0.0) return false;
      double th = std::fmod(std::atan2(y, x) - s.theta_lo, 2.0 * std::numbers::pi);
      if (th < 0.0) th += 2.0 * std::numbers::pi;
      return th <= s.theta_hi - s.theta_lo + 1e-12;
    }
  }
  return false;
}

}  // namespace

void MeshSpec::validate() const {
  auto bad = [](const std::string& what) { throw DomainError("mesh spec: " + what); };
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) && std::isfinite(y_max))) {
    bad("extents must be finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) bad("empty extent");
  if (x_min > 0.0 || x_max < 0.0 || y_min > 0.0 || y_max < 0.0) bad("the corner (0, 0) must lie in the box");
  const int need_x = (x_min < 0.0 && x_max > 0.0) ? 3 : 2;
  const int need_y = (y_min < 0.0 && y_max > 0.0) ? 3 : 2;
  if (nx < need_x || ny < need_y) bad("too few nodes");
  if (!(grading > 0.0 && grading <= 1.0)) bad("grading must lie in (0, 1]");
  if (geometry == Geometry::l_shape && !(x_max > 0.0 && y_min < 0.0 && x_min < 0.0 && y_max > 0.0)) {
    bad("l_shape needs the corner strictly inside the box");
  }
  if (geometry == Geometry::sector_annulus) {
    if (!(r_in > 0.0 && r_out > r_in)) bad("sector needs 0 < r_in < r_out");
    if (!(theta_hi > theta_lo && theta_hi - theta_lo < 2.0 * std::numbers::pi)) bad("bad sector angles");
  }
}

CornerMesh build_mesh(const MeshSpec& spec) {
  spec.validate();
  CornerMesh m;
  m.geometry = spec.geometry;
  m.x_nodes = axis_nodes(spec.x_min, spec.x_max, spec.nx, spec.grading);
  m.y_nodes = axis_nodes(spec.y_min, spec.y_max, spec.ny, spec.grading);
  const int nx = m.nx();
  const int ny = m.ny();
  std::vector<char> in(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) in[j * nx + i] = inside(spec, m.x_nodes[i], m.y_nodes[j]);
  }
  m.mask.assign(in.size(), NodeTag::exterior);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int id = j * nx + i;
      if (!in[id]) continue;
      const double x = m.x_nodes[i];
      const double y = m.y_nodes[j];
      bool edge = i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
      if (!edge) {
        edge = !in[id - 1] || !in[id + 1] || !in[id - nx] || !in[id + nx];
      }
      if (spec.geometry == Geometry::l_shape && ((y == 0.0 && x >= 0.0) || (x == 0.0 && y <= 0.0))) {
        edge = true;
      }
      m.mask[id] = edge ? NodeTag::boundary : NodeTag::interior;
    }
  }
  return m;
}

int CornerMesh::corner_i() const {
  return static_cast<int>(std::find(x_nodes.begin(), x_nodes.end(), 0.0) - x_nodes.begin());
}

int CornerMesh::corner_j() const {
  return static_cast<int>(std::find(y_nodes.begin(), y_nodes.end(), 0.0) - y_nodes.begin());
}

double CornerMesh::corner_distance(int k) const {
  const int ci = corner_i();
  const int cj = corner_j();
  if (ci >= nx() || cj >= ny()) throw DomainError("corner_distance: the origin is not a mesh node");
  double best = std::numeric_limits<double>::infinity();
  double spacing = std::numeric_limits<double>::infinity();  // ignoring tags
  auto consider = [&](int i, int j, double d) {
    if (i < 0 || j < 0 || i >= nx() || j >= ny()) return;
    spacing = std::min(spacing, d);
    if (tag(i, j) == NodeTag::exterior) return;
    best = std::min(best, d);
  };
  consider(ci + k, cj, ci + k < nx() ? x_nodes[std::min(ci + k, nx() - 1)] : 0.0);
  consider(ci - k, cj, ci - k >= 0 ? -x_nodes[std::max(ci - k, 0)] : 0.0);
  consider(ci, cj + k, cj + k < ny() ? y_nodes[std::min(cj + k, ny() - 1)] : 0.0);
  consider(ci, cj - k, cj - k >= 0 ? -y_nodes[std::max(cj - k, 0)] : 0.0);
  // sector annulus: the axes near the origin are cut out
  if (!std::isfinite(best)) best = spacing;
  if (!std::isfinite(best)) throw DomainError("corner_distance: no axis has " + std::to_string(k) + " nodes");
  return best;
}

AngularMode AngularMode::make(int k) {
  if (k < 1) throw DomainError("angular mode index must be positive");
  return {k, 2.0 * k};
}

double AngularMode::operator()(double phi) const {
  // sin(pi s) with exact zeros at integer s
  const double s = lambda * (phi - 1.5 * std::numbers::pi) / std::numbers::pi;
  double r = s - 2.0 * std::floor(0.5 * s);
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r > 1.0) return -std::sin(std::numbers::pi * (r - 1.0));
  return std::sin(std::numbers::pi * r);
}

}  // namespace legcorner
