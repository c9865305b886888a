#pragma once

#include <vector>

#include "ac4/grid.hpp"

namespace ac4 {

struct EmptyNodalSet : DomainError {
  using DomainError::DomainError;
};

/// Zero set of a field, chained into a polyline ordered away from the origin.
/// When the zero set has several components (non-graph nodal set) the longest
/// chain is kept and the result is flagged.
struct NodalCurve {
  std::vector<Vec2> points;
  int n_components = 1;
  bool flagged_multi = false;
};

/// Zero crossings by linear interpolation along grid edges, chained cell to
/// cell. Throws EmptyNodalSet when the field has no sign change.
NodalCurve nodal_curve(const Field& u);

double polyline_distance(const NodalCurve& c, Vec2 p);

/// Cone confinement of the far nodal set: x/alpha - C <= y <= alpha x + C.
/// alpha is fitted on points beyond far_fraction of the curve's extent.
struct ConeFit {
  double alpha = 1.0, C = 0.0;
  bool confined = false;
};
ConeFit cone_fit(const NodalCurve& c, double far_fraction = 0.5);

}  // namespace ac4
