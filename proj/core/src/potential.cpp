#include "ac4/potential.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

namespace ac4 {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGaussN = 8;  // symmetric half
const double kGaussX[kGaussN] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
const double kGaussW[kGaussN] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGaussN; ++i)
    acc += kGaussW[i] * (f(c + r * kGaussX[i]) + f(c - r * kGaussX[i]));
  return acc * r;
}

double hermite(double t, double h, double y0, double y1, double m0, double m1) {
  // cubic Hermite on [0, h], t in [0, h]
  const double s = t / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * m1;
}

double hermite_deriv(double t, double h, double y0, double y1, double m0,
                     double m1) {
  const double s = t / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * h * m0 +
          (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * h * m1) /
         h;
}

}  // namespace

Potential Potential::quartic() {
  Potential p;
  p.kind_ = PotentialKind::Quartic;
  p.id_ = "quartic";
  return p;
}

Potential Potential::tabulated(std::vector<double> u, std::vector<double> f,
                               std::vector<double> df, std::vector<double> ddf) {
  if (u.size() < 5 || u.size() != f.size() || u.size() != df.size() ||
      u.size() != ddf.size())
    throw DomainError("tabulated potential: need >=5 consistent sample columns");
  for (size_t i = 1; i < u.size(); ++i)
    if (!(u[i] > u[i - 1]))
      throw DomainError("tabulated potential: u samples must strictly increase");
  if (std::abs(u.front() + 1.0) > 1e-12 || std::abs(u.back() - 1.0) > 1e-12)
    throw DomainError("tabulated potential: samples must span [-1, 1]");
  Potential p;
  p.kind_ = PotentialKind::Tabulated;
  p.id_ = "tabulated";
  p.u_ = std::move(u);
  p.f_ = std::move(f);
  p.df_ = std::move(df);
  p.ddf_ = std::move(ddf);
  p.validate();
  return p;
}

Potential Potential::from_csv(std::istream& in) {
  std::vector<double> u, f, df, ddf;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b, c, d;
    if (!(ls >> a >> b >> c >> d))
      throw ParseError("potential csv: expected 4 numeric columns u,F,dF,ddF",
                       lineno);
    u.push_back(a);
    f.push_back(b);
    df.push_back(c);
    ddf.push_back(d);
  }
  if (u.empty()) throw ParseError("potential csv: no data rows", 1);
  return tabulated(std::move(u), std::move(f), std::move(df), std::move(ddf));
}

void Potential::validate() const {
  const double even_tol = 1e-6;
  const int m = 512;
  if (!(deriv2(1.0) > 0.0) || !(deriv2(-1.0) > 0.0))
    throw DomainError("potential: F''(+-1) must be positive");
  if (std::abs(value(1.0)) > 1e-10 || std::abs(value(-1.0)) > 1e-10)
    throw DomainError("potential: F(+-1) must vanish");
  for (int i = 0; i <= m; ++i) {
    const double x = -1.0 + 2.0 * i / m;
    if (std::abs(value(x) - value(-x)) > even_tol)
      throw DomainError("potential: F must be even");
    if (i > 0 && i < m && !(value(x) > 0.0))
      throw DomainError("potential: F must be positive on (-1, 1)");
    if (x > 1e-3 && x < 1.0 - 1e-3 && !(deriv(x) < 0.0))
      throw DomainError("potential: F' must not vanish on (0, 1)");
  }
}

int Potential::interval(double u) const {
  // index of the sample interval containing u, for u in [-1, 1]
  auto it = std::upper_bound(u_.begin(), u_.end(), u);
  int k = static_cast<int>(it - u_.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(u_.size()) - 2);
}

double Potential::value(double u) const {
  if (kind_ == PotentialKind::Quartic) {
    const double q = 1.0 - u * u;
    return 0.25 * q * q;
  }
  const double a = std::abs(u);
  if (a > extension_limit_)
    throw DomainError("tabulated potential queried outside extension domain");
  if (a > 1.0) {
    const double c = u > 0 ? ddf_.back() : ddf_.front();
    return 0.5 * c * (a - 1.0) * (a - 1.0);
  }
  const int k = interval(u);
  return hermite(u - u_[k], u_[k + 1] - u_[k], f_[k], f_[k + 1], df_[k],
                 df_[k + 1]);
}

double Potential::deriv(double u) const {
  if (kind_ == PotentialKind::Quartic) return u * u * u - u;
  const double a = std::abs(u);
  if (a > extension_limit_)
    throw DomainError("tabulated potential queried outside extension domain");
  if (a > 1.0) {
    const double c = u > 0 ? ddf_.back() : ddf_.front();
    return (u > 0 ? 1.0 : -1.0) * c * (a - 1.0);
  }
  const int k = interval(u);
  return hermite(u - u_[k], u_[k + 1] - u_[k], df_[k], df_[k + 1], ddf_[k],
                 ddf_[k + 1]);
}

double Potential::deriv2(double u) const {
  if (kind_ == PotentialKind::Quartic) return 3.0 * u * u - 1.0;
  const double a = std::abs(u);
  if (a > extension_limit_)
    throw DomainError("tabulated potential queried outside extension domain");
  if (a >= 1.0) return u > 0 ? ddf_.back() : ddf_.front();
  const int k = interval(u);
  // derivative of the F' patch, so F'' is consistent with deriv()
  return hermite_deriv(u - u_[k], u_[k + 1] - u_[k], df_[k], df_[k + 1],
                       ddf_[k], ddf_[k + 1]);
}

double Potential::well_curvature() const { return deriv2(1.0); }

double HeteroclinicProfile::sample(int i) const {
  const int a = std::abs(i);
  const double v = h_[static_cast<size_t>(a)];
  return i < 0 ? -v : v;
}

double HeteroclinicProfile::sample_deriv(int i) const {
  return hp_[static_cast<size_t>(std::abs(i))];  // H' is even
}

double HeteroclinicProfile::value(double s) const {
  const double a = std::abs(s);
  double v;
  if (a >= S_) {
    v = 1.0 - tail_c_ * std::exp(-kappa_ * a);
  } else {
    const int k = static_cast<int>(a / ds_);
    const int k2 = std::min(k, static_cast<int>(h_.size()) - 2);
    v = hermite(a - k2 * ds_, ds_, h_[k2], h_[k2 + 1], hp_[k2], hp_[k2 + 1]);
  }
  return s < 0 ? -v : v;
}

double HeteroclinicProfile::deriv(double s) const {
  const double a = std::abs(s);
  if (a >= S_) return tail_c_ * kappa_ * std::exp(-kappa_ * a);
  const int k = std::min(static_cast<int>(a / ds_),
                         static_cast<int>(h_.size()) - 2);
  return hermite_deriv(a - k * ds_, ds_, h_[k], h_[k + 1], hp_[k], hp_[k + 1]);
}

HeteroclinicProfile build_heteroclinic(const Potential& p, double S, double ds) {
  if (!(S >= 10.0)) throw DomainError("build_heteroclinic: S must be >= 10");
  if (!(ds <= 0.01) || !(ds > 0))
    throw DomainError("build_heteroclinic: ds must be in (0, 0.01]");

  const int n = static_cast<int>(std::llround(S / ds));
  HeteroclinicProfile prof;
  prof.S_ = n * ds;
  prof.ds_ = ds;
  prof.kappa_ = std::sqrt(p.deriv2(1.0));
  prof.h_.resize(n + 1);
  prof.hp_.resize(n + 1);

  auto speed = [&p](double v) { return std::sqrt(2.0 * p.value(v)); };
  auto slowness = [&speed](double v) { return 1.0 / speed(v); };

  prof.h_[0] = 0.0;
  prof.hp_[0] = speed(0.0);
  double a = 0.0;
  for (int i = 1; i <= n; ++i) {
    // Newton inversion of int_a^x slowness = ds
    double x = a + speed(a) * ds;
    x = std::min(x, 1.0 - 1e-16);
    bool converged = false;
    for (int it = 0; it < 40; ++it) {
      const double phi = gauss16(slowness, a, x) - ds;
      const double step = phi * speed(x);
      x -= step;
      x = std::min(std::max(x, a), 1.0 - 1e-16);
      if (std::abs(step) <= 1e-15 * (1.0 + x)) {
        converged = true;
        break;
      }
    }
    if (!converged && 1.0 - a > 1e-13)
      throw AccuracyError("build_heteroclinic: quadrature inversion stalled");
    if (1.0 - a <= 1e-13) {
      // saturated tail; advance analytically
      x = 1.0 - (1.0 - a) * std::exp(-prof.kappa_ * ds);
    }
    prof.h_[i] = x;
    prof.hp_[i] = speed(x);
    a = x;
  }
  prof.tail_c_ = (1.0 - prof.h_[n]) * std::exp(prof.kappa_ * prof.S_);
  return prof;
}

std::pair<double, double> energy_constant_routes(const Potential& p,
                                                 const HeteroclinicProfile& prof) {
  const int n = prof.samples_per_side();
  const double ds = prof.spacing();
  double e1 = 0.0, e2 = 0.0;
  for (int i = -n; i <= n; ++i) {
    const double w = (i == -n || i == n) ? 0.5 : 1.0;
    const double hp = prof.sample_deriv(i);
    e1 += w * (0.5 * hp * hp + p.value(prof.sample(i)));
    e2 += w * hp * hp;
  }
  e1 *= ds;
  e2 *= ds;
  // analytic tails: H' ~ kappa C e^{-kappa s} on both sides
  const double edge = 1.0 - prof.sample(n);
  const double tail = prof.tail_rate() * edge * edge;
  return {e1 + tail, e2 + tail};
}

double energy_constant(const Potential& p, const HeteroclinicProfile& prof) {
  auto [e1, e2] = energy_constant_routes(p, prof);
  if (std::abs(e1 - e2) > 1e-8)
    throw AccuracyError("energy_constant: quadrature routes disagree");
  return e1;
}

}  // namespace ac4
