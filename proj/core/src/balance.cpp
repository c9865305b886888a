#include "ac4/balance.hpp"

#include <algorithm>
#include <cmath>

namespace ac4 {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool Contour::is_closed() const {
  return vertices.size() >= 3 &&
         (vertices.front() - vertices.back()).norm() < 1e-12;
}

GradientField gradient(const Field& u) {
  const int n = u.n();
  const double h = u.grid().spacing();
  GradientField g{Field(u.grid()), Field(u.grid())};
  auto at = [&](int i, int j) -> double {
    if (i == -1) i = 1;
    if (j == -1) j = 1;
    return u(std::min(i, n - 1), std::min(j, n - 1));
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == n - 1)
        g.gx(i, j) = (u(i, j) - u(i - 1, j)) / h;
      else
        g.gx(i, j) = (at(i + 1, j) - at(i - 1, j)) / (2 * h);
      if (j == n - 1)
        g.gy(i, j) = (u(i, j) - u(i, j - 1)) / h;
      else
        g.gy(i, j) = (at(i, j + 1) - at(i, j - 1)) / (2 * h);
    }
  return g;
}

Vec2 flux_density(const Field& u, const GradientField& g, const Potential& p,
                  const KillingField& X, int i, int j) {
  const Vec2 pos = u.grid().point(i, j);
  const Vec2 Xv = X(pos);
  const Vec2 grad{g.gx(i, j), g.gy(i, j)};
  const double e = 0.5 * grad.dot(grad) + p.value(u(i, j));
  const double Xu = Xv.dot(grad);
  return {e * Xv.x - Xu * grad.x, e * Xv.y - Xu * grad.y};
}

double contour_flux(const Field& u, const Potential& p, const Contour& c,
                    const KillingField& X) {
  const QuadrantGrid& g = u.grid();
  const double h = g.spacing();
  const int n = g.n();
  if (c.vertices.size() < 2) throw DomainError("contour: need >= 2 vertices");

  auto to_index = [&](Vec2 v) -> std::pair<int, int> {
    const double fi = v.x / h, fj = v.y / h;
    const int i = static_cast<int>(std::lround(fi));
    const int j = static_cast<int>(std::lround(fj));
    if (std::abs(fi - i) > 1e-9 || std::abs(fj - j) > 1e-9)
      throw DomainError("contour: vertices must lie on grid nodes");
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw DomainError("contour exits grid");
    return {i, j};
  };

  const GradientField grad = gradient(u);
  double total = 0.0;
  for (size_t s = 0; s + 1 < c.vertices.size(); ++s) {
    auto [i0, j0] = to_index(c.vertices[s]);
    auto [i1, j1] = to_index(c.vertices[s + 1]);
    if ((i0 != i1) == (j0 != j1))
      throw DomainError("contour: segments must be grid-aligned");
    // canonical ascending sweep; sign restores the traversal direction
    const bool horiz = (i0 != i1);
    const int lo = horiz ? std::min(i0, i1) : std::min(j0, j1);
    const int hi = horiz ? std::max(i0, i1) : std::max(j0, j1);
    const double dirsign = horiz ? (i1 > i0 ? 1.0 : -1.0) : (j1 > j0 ? 1.0 : -1.0);
    // right-hand normal of the traversal direction
    const Vec2 nu = horiz ? Vec2{0.0, -dirsign} : Vec2{dirsign, 0.0};
    double seg = 0.0;
    for (int k = lo; k <= hi; ++k) {
      const int i = horiz ? k : i0;
      const int j = horiz ? j0 : k;
      const double w = (k == lo || k == hi) ? 0.5 : 1.0;
      seg += w * flux_density(u, grad, p, X, i, j).dot(nu);
    }
    total += seg * h;  // nu carries the traversal direction
  }
  return total;
}

namespace {

struct AxisProfile {
  std::vector<double> g;  // energy density along the axis
};

// energy density along x = 0 (axis = 0) or y = 0 (axis = 1)
AxisProfile axis_profile(const Field& u, const Potential& p, int axis) {
  const int n = u.n();
  const double h = u.grid().spacing();
  AxisProfile prof;
  prof.g.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double uc = axis == 0 ? u(0, k) : u(k, 0);
    double du;  // tangential derivative along the axis
    if (k == 0)
      du = 0.0;  // mirror symmetry
    else if (k == n - 1)
      du = (axis == 0 ? u(0, k) - u(0, k - 1) : u(k, 0) - u(k - 1, 0)) / h;
    else
      du = (axis == 0 ? u(0, k + 1) - u(0, k - 1) : u(k + 1, 0) - u(k - 1, 0)) /
           (2 * h);
    prof.g[static_cast<size_t>(k)] = 0.5 * du * du + p.value(uc);
  }
  return prof;
}

double trapz(const std::vector<double>& v, double h) {
  double acc = 0.5 * (v.front() + v.back());
  for (size_t k = 1; k + 1 < v.size(); ++k) acc += v[k];
  return acc * h;
}

double tail_estimate(const std::vector<double>& g, double h) {
  // bound the truncated tail by g(L)/alpha with alpha from the last decade
  const size_t n = g.size();
  const size_t back = std::min<size_t>(n - 1, static_cast<size_t>(5.0 / h));
  const double gL = g[n - 1], g0 = g[n - 1 - back];
  if (gL < 1e-300 || g0 < 1e-300) return 0.0;
  double alpha = std::log(g0 / gL) / (back * h);
  alpha = std::clamp(alpha, 0.05, 50.0);
  return gL / alpha;
}

}  // namespace

AxisIntegrals axis_integrals(const Field& u, const Potential& p, double c0) {
  const double h = u.grid().spacing();
  const AxisProfile ga = axis_profile(u, p, 0);
  const AxisProfile gb = axis_profile(u, p, 1);
  AxisIntegrals out;
  out.A = trapz(ga.g, h);
  out.B = trapz(gb.g, h);
  std::vector<double> ma(ga.g.size()), mb(gb.g.size());
  for (size_t k = 0; k < ga.g.size(); ++k) {
    ma[k] = ga.g[k] * (static_cast<double>(k) * h);
    mb[k] = gb.g[k] * (static_cast<double>(k) * h);
  }
  out.MA = trapz(ma, h);
  out.MB = trapz(mb, h);
  out.defect = std::abs(std::hypot(out.A, out.B) / c0 - 1.0);
  const double L = u.grid().length();
  out.tail_bound =
      (tail_estimate(ga.g, h) + tail_estimate(gb.g, h)) * (1.0 + L) / c0;
  return out;
}

Extraction extract_theta(const Field& u, const Potential& p, double c0) {
  const AxisIntegrals ax = axis_integrals(u, p, c0);
  return {std::atan2(ax.B, ax.A), ax.defect, ax.defect > 0.05};
}

Extraction extract_r(const Field& u, const Potential& p, double c0) {
  const AxisIntegrals ax = axis_integrals(u, p, c0);
  return {(ax.MA - ax.MB) / c0, ax.defect, ax.defect > 0.05};
}

Classification classify(const Field& u, const Potential& p, double c0) {
  const AxisIntegrals ax = axis_integrals(u, p, c0);
  Classification cls;
  cls.theta_minus_quarter_pi = std::atan2(ax.B, ax.A) - kPi / 4;
  cls.r = (ax.MA - ax.MB) / c0;
  cls.defect = ax.defect;
  cls.warning = ax.defect > 0.05;
  return cls;
}

}  // namespace ac4
