#include "ac4/operators.hpp"

#include <cmath>

namespace ac4 {

BoundaryFn ansatz_boundary(const Ansatz& a, const HeteroclinicProfile& prof) {
  return [a, prof](Vec2 p) { return a.value(prof, p); };
}

Field ansatz_samples(const QuadrantGrid& g, const Ansatz& a,
                     const HeteroclinicProfile& prof) {
  Field f(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) f(i, j) = a.value(prof, g.point(i, j));
  return f;
}

namespace {

// shared stencil loop; edge(i) supplies u on the outer edges
template <typename EdgeX, typename EdgeY>
Field residual_impl(const Field& u, const Potential& p, EdgeX&& edge_x,
                    EdgeY&& edge_y) {
  const int n = u.n();
  const double h = u.grid().spacing();
  const double ih2 = 1.0 / (h * h);
  Field res(u.grid());
  auto at = [&](int i, int j) -> double {
    if (i == -1) i = 1;    // mirror across x = 0
    if (j == -1) j = 1;    // mirror across y = 0
    if (i == n - 1) return edge_x(j);
    if (j == n - 1) return edge_y(i);
    return u(i, j);
  };
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      const double c = u(i, j);
      const double lap =
          (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * c) *
          ih2;
      res(i, j) = lap - p.deriv(c);
    }
  return res;
}

}  // namespace

Field residual(const Field& u, const Potential& p, const BoundaryFn& bc) {
  const int n = u.n();
  const QuadrantGrid& g = u.grid();
  std::vector<double> ex(static_cast<size_t>(n)), ey(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    ex[static_cast<size_t>(k)] = bc(g.point(n - 1, k));
    ey[static_cast<size_t>(k)] = bc(g.point(k, n - 1));
  }
  return residual_impl(
      u, p, [&ex](int j) { return ex[static_cast<size_t>(j)]; },
      [&ey](int i) { return ey[static_cast<size_t>(i)]; });
}

Field residual_stored_bc(const Field& u, const Potential& p) {
  const int n = u.n();
  return residual_impl(
      u, p, [&u, n](int j) { return u(n - 1, j); },
      [&u, n](int i) { return u(i, n - 1); });
}

Field linearized_apply(const Field& u, const Potential& p, const Field& v) {
  if (!(u.grid() == v.grid()))
    throw DomainError("linearized_apply: fields on different grids");
  const int n = u.n();
  const double h = u.grid().spacing();
  const double ih2 = 1.0 / (h * h);
  Field out(u.grid());
  auto at = [&](int i, int j) -> double {
    if (i == -1) i = 1;
    if (j == -1) j = 1;
    if (i == n - 1 || j == n - 1) return 0.0;  // zero Dirichlet outer
    return v(i, j);
  };
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      const double lap =
          (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) -
           4.0 * v(i, j)) *
          ih2;
      out(i, j) = -lap + p.deriv2(u(i, j)) * v(i, j);
    }
  return out;
}

Monotonicity monotonicity_check(const Field& u) {
  const int n = u.n();
  const double h = u.grid().spacing();
  const double sat = 1e-13;               // 1 - u^2 below this is unresolvable
  const double tie = 8.0 * 2.220446049250313e-16;  // a few ulp of 1
  Monotonicity m;
  m.max_dx = -std::numeric_limits<double>::infinity();
  m.min_dy = std::numeric_limits<double>::infinity();
  m.ok = true;
  auto well = [&](double v) { return std::abs(1.0 - v * v); };
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j) {
      const double ddx = u(i + 1, j) - u(i - 1, j);
      const double ddy = u(i, j + 1) - u(i, j - 1);
      m.max_dx = std::max(m.max_dx, ddx / (2 * h));
      m.min_dy = std::min(m.min_dy, ddy / (2 * h));
      if (ddx >= 0.0) {
        const bool saturated =
            well(u(i + 1, j)) <= sat && well(u(i - 1, j)) <= sat;
        if (saturated && ddx <= tie)
          ++m.saturated_ties;
        else
          m.ok = false;
      }
      if (ddy <= 0.0) {
        const bool saturated =
            well(u(i, j + 1)) <= sat && well(u(i, j - 1)) <= sat;
        if (saturated && -ddy <= tie)
          ++m.saturated_ties;
        else
          m.ok = false;
      }
    }
  return m;
}

bool strictly_inside_well(const Field& u) {
  const double allowance = 4.0 * 2.220446049250313e-16;
  const int n = u.n();
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      if (std::abs(u(i, j)) >= 1.0 + allowance) return false;
  return true;
}

Decomposition decompose(const Field& u, const Ansatz& a,
                        const HeteroclinicProfile& prof) {
  const QuadrantGrid& g = u.grid();
  const double delta = 0.25 * prof.tail_rate();
  Decomposition d{Field(g), 0, 0, 0};
  double sq = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const Vec2 p = g.point(i, j);
      const double v = u(i, j) - a.value(prof, p);
      d.v(i, j) = v;
      sq += v * v;
      d.sup = std::max(d.sup, std::abs(v));
      d.weighted_sup = std::max(d.weighted_sup, std::abs(v) * std::exp(delta * p.norm()));
    }
  d.l2 = g.spacing() * std::sqrt(sq);
  return d;
}

}  // namespace ac4
