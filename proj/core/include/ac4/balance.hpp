#pragma once

#include <vector>

#include "ac4/grid.hpp"
#include "ac4/potential.hpp"

namespace ac4 {

/// Generators of the planar isometries: translations and the rotation field.
enum class KillingKind { TranslationX, TranslationY, Rotation };

struct KillingField {
  KillingKind kind = KillingKind::TranslationX;
  Vec2 operator()(Vec2 p) const {
    switch (kind) {
      case KillingKind::TranslationX: return {1.0, 0.0};
      case KillingKind::TranslationY: return {0.0, 1.0};
      default: return {-p.y, p.x};
    }
  }
};

/// Grid-aligned polyline in the closed quadrant. Consecutive vertices must
/// lie on grid nodes and differ in exactly one coordinate.
struct Contour {
  std::vector<Vec2> vertices;
  bool is_closed() const;
};

/// Centered differences; mirror (even) values across the axes, one-sided at
/// the outer edges.
struct GradientField {
  Field gx, gy;
};
GradientField gradient(const Field& u);

/// Xi(X, u) = (|grad u|^2/2 + F(u)) X - X(u) grad u at a grid point.
Vec2 flux_density(const Field& u, const GradientField& g, const Potential& p,
                  const KillingField& X, int i, int j);

/// Composite-trapezoid line integral of Xi . nu with the right-hand outward
/// normal (outward for counterclockwise closed contours). Segment sums run
/// in canonical index order, so reversing a contour negates the flux exactly.
double contour_flux(const Field& u, const Potential& p, const Contour& c,
                    const KillingField& X);

/// Axis integrals behind the balancing identities:
///   A  = int_{x=0} (|du/dy|^2/2 + F) dy      -> c0 cos(theta)
///   B  = int_{y=0} (|du/dx|^2/2 + F) dx      -> c0 sin(theta)
///   MA - MB (first moments)                  -> c0 r
/// defect = |sqrt(A^2+B^2)/c0 - 1|; tail_bound estimates the truncated tail.
struct AxisIntegrals {
  double A = 0, B = 0, MA = 0, MB = 0;
  double defect = 0;
  double tail_bound = 0;
};
AxisIntegrals axis_integrals(const Field& u, const Potential& p, double c0);

struct Extraction {
  double value = 0;
  double defect = 0;
  bool warning = false;  // set when defect > 0.05
};
Extraction extract_theta(const Field& u, const Potential& p, double c0);
Extraction extract_r(const Field& u, const Potential& p, double c0);

/// The classifying data (theta - pi/4, r) read off the axis integrals.
struct Classification {
  double theta_minus_quarter_pi = 0;
  double r = 0;
  double defect = 0;
  bool warning = false;
};
Classification classify(const Field& u, const Potential& p, double c0);

}  // namespace ac4
