#include "ac4/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace ac4 {

namespace {

// edge key: (horizontal?, i, j) for the edge from (i,j) to (i+1,j) or (i,j+1)
using EdgeKey = std::tuple<int, int, int>;

double crossing(double a, double b) { return a / (a - b); }

bool opposite(double a, double b) {
  return (a < 0 && b >= 0) || (a >= 0 && b < 0);
}

}  // namespace

NodalCurve nodal_curve(const Field& u) {
  const int n = u.n();
  const QuadrantGrid& g = u.grid();
  const double h = g.spacing();

  std::map<EdgeKey, Vec2> cross;
  auto edge_point = [&](int horiz, int i, int j) -> Vec2 {
    const double a = u(i, j);
    const double b = horiz ? u(i + 1, j) : u(i, j + 1);
    const double t = crossing(a, b);
    return horiz ? Vec2{g.coord(i) + t * h, g.coord(j)}
                 : Vec2{g.coord(i), g.coord(j) + t * h};
  };

  // segments inside each cell, as pairs of edge keys
  std::vector<std::pair<EdgeKey, EdgeKey>> segs;
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      const double a = u(i, j), b = u(i + 1, j), c = u(i + 1, j + 1),
                   d = u(i, j + 1);
      EdgeKey eb{1, i, j}, er{0, i + 1, j}, et{1, i, j + 1}, el{0, i, j};
      const bool xb = opposite(a, b), xr = opposite(b, c), xt = opposite(d, c),
                 xl = opposite(a, d);
      const int cnt = xb + xr + xt + xl;
      if (cnt == 0) continue;
      if (xb) cross.emplace(eb, edge_point(1, i, j));
      if (xr) cross.emplace(er, edge_point(0, i + 1, j));
      if (xt) cross.emplace(et, edge_point(1, i, j + 1));
      if (xl) cross.emplace(el, edge_point(0, i, j));
      if (cnt == 2) {
        EdgeKey e1, e2;
        bool first = true;
        for (auto [flag, key] : {std::pair{xb, eb}, std::pair{xr, er},
                                 std::pair{xt, et}, std::pair{xl, el}})
          if (flag) (first ? e1 : e2) = key, first = false;
        segs.emplace_back(e1, e2);
      } else if (cnt == 4) {
        // saddle cell: connect by the sign of the cell-center value
        const double center = 0.25 * (a + b + c + d);
        if ((center < 0) == (a < 0)) {
          segs.emplace_back(eb, er);  // separate the b and d corners
          segs.emplace_back(et, el);
        } else {
          segs.emplace_back(eb, el);
          segs.emplace_back(er, et);
        }
      }
      // cnt == 1 or 3 can only happen with exact zeros at corners; the
      // opposite() convention (zero counts as +) prevents it
    }

  if (segs.empty()) throw EmptyNodalSet("nodal_curve: field has no sign change");

  // chain segments by shared edges
  std::map<EdgeKey, std::vector<int>> adj;
  for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
    adj[segs[static_cast<size_t>(s)].first].push_back(s);
    adj[segs[static_cast<size_t>(s)].second].push_back(s);
  }
  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<Vec2>> chains;
  auto walk = [&](int s0, EdgeKey from) {
    std::vector<Vec2> pts{cross[from]};
    int s = s0;
    EdgeKey cur = from;
    while (s >= 0 && !used[static_cast<size_t>(s)]) {
      used[static_cast<size_t>(s)] = 1;
      const auto& [e1, e2] = segs[static_cast<size_t>(s)];
      cur = (e1 == cur) ? e2 : e1;
      pts.push_back(cross[cur]);
      int next = -1;
      for (int t : adj[cur])
        if (!used[static_cast<size_t>(t)]) next = t;
      s = next;
    }
    return pts;
  };
  // start at open ends first so chains do not split
  for (auto& [key, ss] : adj)
    if (ss.size() == 1 && !used[static_cast<size_t>(ss[0])])
      chains.push_back(walk(ss[0], key));
  for (int s = 0; s < static_cast<int>(segs.size()); ++s)  // leftover loops
    if (!used[static_cast<size_t>(s)])
      chains.push_back(walk(s, segs[static_cast<size_t>(s)].first));

  std::sort(chains.begin(), chains.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });

  NodalCurve out;
  out.n_components = static_cast<int>(chains.size());
  out.flagged_multi = chains.size() > 1;
  out.points = std::move(chains.front());
  if (!out.points.empty() && out.points.front().norm() > out.points.back().norm())
    std::reverse(out.points.begin(), out.points.end());
  return out;
}

double polyline_distance(const NodalCurve& c, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s + 1 < c.points.size(); ++s) {
    const Vec2 a = c.points[s], b = c.points[s + 1];
    const Vec2 d = b - a;
    const double len2 = d.dot(d);
    double t = len2 > 0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (p - (a + d * t)).norm());
  }
  if (c.points.size() == 1) best = (p - c.points.front()).norm();
  return best;
}

ConeFit cone_fit(const NodalCurve& c, double far_fraction) {
  ConeFit fit;
  if (c.points.empty()) return fit;
  double extent = 0.0;
  for (const Vec2& p : c.points) extent = std::max(extent, p.norm());
  const double r0 = far_fraction * extent;
  double alpha = 1.0;
  bool any = false;
  for (const Vec2& p : c.points) {
    if (p.norm() < r0) continue;
    if (p.x <= 0.0 || p.y <= 0.0) return fit;  // leaves the open cone family
    alpha = std::max({alpha, p.y / p.x, p.x / p.y});
    any = true;
  }
  if (!any) return fit;
  fit.alpha = alpha * (1.0 + 1e-9) + 1e-9;  // strictly > 1 and covers far points
  double C = 0.0;
  for (const Vec2& p : c.points)
    C = std::max({C, p.y - fit.alpha * p.x, p.x / fit.alpha - p.y});
  fit.C = C;
  fit.confined = true;
  return fit;
}

}  // namespace ac4
