#pragma once

#include <functional>

#include "ac4/grid.hpp"
#include "ac4/potential.hpp"

namespace ac4 {

/// Dirichlet data for the outer edges x = L and y = L.
using BoundaryFn = std::function<double(Vec2)>;

BoundaryFn ansatz_boundary(const Ansatz& a, const HeteroclinicProfile& prof);

/// Sample the glued ansatz at every grid point.
Field ansatz_samples(const QuadrantGrid& g, const Ansatz& a,
                     const HeteroclinicProfile& prof);

/// Delta u - F'(u) with mirror (even) ghost values across x = 0 and y = 0
/// and outer-edge values clamped to bc. Entries on the outer edges are zero;
/// the residual is defined at the remaining points only.
Field residual(const Field& u, const Potential& p, const BoundaryFn& bc);

/// Same, but the field's stored outer-edge values serve as Dirichlet data.
Field residual_stored_bc(const Field& u, const Potential& p);

/// (-Delta + F''(u)) v with zero Dirichlet outer edges and mirror axes.
Field linearized_apply(const Field& u, const Potential& p, const Field& v);

/// Centered-difference monotonicity over interior points. Accepted solutions
/// must have du/dx < 0 and du/dy > 0 in the open quadrant. Where the well is
/// machine-saturated (1 - u^2 below ~1e-13 on the stencil) the true
/// difference is smaller than one ulp of 1, so rounding ties up to a few ulp
/// are tolerated there; `strict` reports the raw extrema.
struct Monotonicity {
  double max_dx = 0, min_dy = 0;  // raw centered-difference extrema
  int saturated_ties = 0;         // ties excused inside saturated wells
  bool ok = false;
};
Monotonicity monotonicity_check(const Field& u);

/// |u| < 1 up to the same machine-saturation allowance (one-two ulp).
bool strictly_inside_well(const Field& u);

/// v = u - u_ansatz with smallness diagnostics. The weighted sup norm uses
/// the weight e^{delta |x|}, delta = tail_rate / 4.
struct Decomposition {
  Field v;
  double l2 = 0, sup = 0, weighted_sup = 0;
};
Decomposition decompose(const Field& u, const Ansatz& a,
                        const HeteroclinicProfile& prof);

}  // namespace ac4
