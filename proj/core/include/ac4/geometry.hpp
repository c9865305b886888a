#pragma once

#include <array>
#include <cmath>

#include "ac4/errors.hpp"
#include "ac4/potential.hpp"

namespace ac4 {

struct Vec2 {
  double x = 0.0, y = 0.0;
  double norm() const { return std::hypot(x, y); }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {c * x, c * y}; }
};

/// Oriented affine line r*e^perp + R*e with e = (cos theta, sin theta).
class End {
 public:
  End(double theta, double r);

  double theta() const { return theta_; }
  double offset() const { return r_; }
  Vec2 direction() const { return e_; }       // e
  Vec2 normal() const { return eperp_; }      // e rotated by +pi/2

  /// x . e^perp - r; zero exactly on the line.
  double signed_distance(Vec2 p) const { return p.dot(eperp_) - r_; }

 private:
  double theta_, r_;
  Vec2 e_, eperp_;
};

/// An ordered quadruple of ends with a gluing radius R. Half-lines start on
/// the circle |x| = R and must stay pairwise at distance >= 4.
class EndConfiguration {
 public:
  /// Ends at angles theta, pi-theta, pi+theta, 2pi-theta with offsets
  /// r, -r, r, -r, which makes the glued ansatz even in x and y. The
  /// first-quadrant end carries exactly (theta, r). R <= 0 selects the
  /// default max(10, 3/tan, 3 tan, 4|r|); R is grown geometrically until
  /// the separation condition holds.
  static EndConfiguration symmetric(double theta, double r, double R = 0.0);

  const End& end(int j) const { return ends_[static_cast<size_t>(j)]; }
  double gluing_radius() const { return R_; }

  Vec2 halfline_start(int j) const;
  double halfline_distance(int j, Vec2 p) const;
  double min_halfline_separation() const;

 private:
  EndConfiguration(std::array<End, 4> ends, double R);
  std::array<End, 4> ends_;
  std::array<double, 4> s0_;  // arclength of half-line starts
  double R_;
};

/// Partition-of-unity glued approximate solution
///   u_cfg = flip * sum_j (-1)^j I_j H(sdist(., end_j)).
/// The flip is chosen so the field tends to +1 along the y-axis. Weights
/// I_0..I_4 are nonnegative, sum to one, and saturate on the core ball and
/// on the per-end wedges.
class Ansatz {
 public:
  explicit Ansatz(EndConfiguration cfg);

  const EndConfiguration& configuration() const { return cfg_; }
  int sign_flip() const { return flip_; }

  std::array<double, 5> weights(Vec2 p) const;
  double weight(int j, Vec2 p) const;  // j in 0..4; j = 0 is the core weight

  double value(const HeteroclinicProfile& prof, Vec2 p) const;

  /// Saturation region of weight j (where the weight is identically 1).
  bool in_omega_prime(int j, Vec2 p) const;
  /// Support region Omega_j of weight j.
  bool in_omega(int j, Vec2 p) const;

 private:
  double raw_sum(const HeteroclinicProfile& prof, Vec2 p) const;
  EndConfiguration cfg_;
  int flip_ = 1;
};

}  // namespace ac4
