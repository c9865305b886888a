#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ac4/errors.hpp"

namespace ac4 {

enum class PotentialKind { Quartic, Tabulated };

/// Double-well potential F with F(+-1) = 0, F > 0 on (-1,1), F''(+-1) > 0
/// and F even. The quartic well F(u) = (1-u^2)^2/4 is closed-form; tabulated
/// wells interpolate samples of (F, F', F'') on [-1,1] and are extended
/// outside by the quadratic matching F''(+-1).
class Potential {
 public:
  static Potential quartic();

  /// Build from samples on a strictly increasing grid spanning [-1,1].
  /// The well axioms are checked on a lattice; construction throws
  /// DomainError when they fail.
  static Potential tabulated(std::vector<double> u, std::vector<double> f,
                             std::vector<double> df, std::vector<double> ddf);

  /// CSV with header-free columns u,F,dF,ddF. Throws ParseError.
  static Potential from_csv(std::istream& in);

  double value(double u) const;   // F(u)
  double deriv(double u) const;   // F'(u)
  double deriv2(double u) const;  // F''(u)

  PotentialKind kind() const { return kind_; }
  const std::string& id() const { return id_; }

  /// Curvature at the wells, F''(1); sets the heteroclinic tail rate.
  double well_curvature() const;

 private:
  Potential() = default;
  void validate() const;
  int interval(double u) const;

  PotentialKind kind_ = PotentialKind::Quartic;
  std::string id_ = "quartic";
  std::vector<double> u_, f_, df_, ddf_;
  double extension_limit_ = 3.0;  // queries beyond |u| > limit are rejected
};

/// One-dimensional heteroclinic connection H(-inf) = -1, H(+inf) = +1,
/// H(0) = 0, sampled on [-S, S] with uniform spacing. H' samples are taken
/// from the first integral H' = sqrt(2 F(H)), so the equipartition identity
/// holds at sample points to rounding.
class HeteroclinicProfile {
 public:
  double halfwidth() const { return S_; }
  double spacing() const { return ds_; }
  int samples_per_side() const { return static_cast<int>(h_.size()) - 1; }

  /// Sample values at s = i*ds, i may be negative (odd extension).
  double sample(int i) const;
  double sample_deriv(int i) const;

  /// Cubic Hermite interpolation of H(s); analytic tail beyond |s| > S.
  double value(double s) const;
  double deriv(double s) const;

  double tail_rate() const { return kappa_; }       // sqrt(F''(1))
  double tail_amplitude() const { return tail_c_; }  // 1-H(s) ~ C e^{-kappa s}

 private:
  friend HeteroclinicProfile build_heteroclinic(const Potential&, double, double);
  double S_ = 0, ds_ = 0, kappa_ = 0, tail_c_ = 0;
  std::vector<double> h_, hp_;  // samples on [0, S]
};

/// Monotone inversion of s(H) = int_0^H dv / sqrt(2 F(v)); no shooting.
/// pre: S >= 10, ds <= 0.01.
HeteroclinicProfile build_heteroclinic(const Potential& p, double S = 12.0,
                                       double ds = 0.01);

/// Both quadrature routes for c0: the energy form int(1/2 H'^2 + F(H)) and
/// the equipartition form int H'^2. Tail corrections included.
std::pair<double, double> energy_constant_routes(const Potential& p,
                                                 const HeteroclinicProfile& prof);

/// c0; throws AccuracyError when the two routes disagree beyond 1e-8.
double energy_constant(const Potential& p, const HeteroclinicProfile& prof);

}  // namespace ac4
