#include "ac4/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ac4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

double smootherstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

// distance from p to the ray p0 + t*d, t >= 0, |d| = 1
double ray_distance(Vec2 p, Vec2 p0, Vec2 d) {
  const Vec2 q = p - p0;
  const double t = std::max(q.dot(d), 0.0);
  return (q - d * t).norm();
}

double ray_ray_distance(Vec2 a0, Vec2 ad, Vec2 b0, Vec2 bd) {
  const double den = ad.x * bd.y - ad.y * bd.x;
  if (std::abs(den) > 1e-14) {
    const Vec2 q = b0 - a0;
    const double t = (q.x * bd.y - q.y * bd.x) / den;
    const double s = (q.x * ad.y - q.y * ad.x) / den;
    if (t >= 0.0 && s >= 0.0) return 0.0;  // rays cross
  }
  return std::min(ray_distance(a0, b0, bd), ray_distance(b0, a0, ad));
}

}  // namespace

End::End(double theta, double r) : theta_(theta), r_(r) {
  e_ = {std::cos(theta), std::sin(theta)};
  eperp_ = {-std::sin(theta), std::cos(theta)};
}

EndConfiguration::EndConfiguration(std::array<End, 4> ends, double R)
    : ends_(ends), R_(R) {
  for (int j = 0; j < 4; ++j) {
    const double r = ends_[static_cast<size_t>(j)].offset();
    if (std::abs(r) >= R_)
      throw DomainError("end configuration: |r| must be below the gluing radius");
    s0_[static_cast<size_t>(j)] = std::sqrt(R_ * R_ - r * r);
  }
}

EndConfiguration EndConfiguration::symmetric(double theta, double r, double R) {
  if (!(theta > 0.0 && theta < kPi / 2))
    throw DomainError("symmetric_ends: theta must lie in (0, pi/2)");
  if (R <= 0.0)
    R = std::max({10.0, 3.0 / std::tan(theta), 3.0 * std::tan(theta),
                  4.0 * std::abs(r)});
  const std::array<End, 4> ends = {End(theta, r), End(kPi - theta, -r),
                                   End(kPi + theta, r), End(2 * kPi - theta, -r)};
  for (int grow = 0;; ++grow) {
    EndConfiguration cfg(ends, R);
    if (cfg.min_halfline_separation() >= 4.0) return cfg;
    if (grow > 64) throw DomainError("symmetric_ends: separation unattainable");
    R *= 1.25;
  }
}

Vec2 EndConfiguration::halfline_start(int j) const {
  const End& e = ends_[static_cast<size_t>(j)];
  return e.normal() * e.offset() + e.direction() * s0_[static_cast<size_t>(j)];
}

double EndConfiguration::halfline_distance(int j, Vec2 p) const {
  const End& e = ends_[static_cast<size_t>(j)];
  return ray_distance(p, halfline_start(j), e.direction());
}

double EndConfiguration::min_halfline_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      best = std::min(best, ray_ray_distance(
                                halfline_start(i),
                                ends_[static_cast<size_t>(i)].direction(),
                                halfline_start(j),
                                ends_[static_cast<size_t>(j)].direction()));
  return best;
}

Ansatz::Ansatz(EndConfiguration cfg) : cfg_(std::move(cfg)) {
  // anchor the sign so the glued field tends to +1 along the positive y-axis
  double raw = 0.0;
  const Vec2 probe{0.0, cfg_.gluing_radius() + 6.0};
  for (int j = 0; j < 4; ++j) {
    const double sgn = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^j, j counted from 1
    const double d = cfg_.end(j).signed_distance(probe);
    raw += sgn * weight(j + 1, probe) * std::tanh(d);  // any odd sigmoid works here
  }
  flip_ = raw >= 0.0 ? 1 : -1;
}

std::array<double, 5> Ansatz::weights(Vec2 p) const {
  const double R = cfg_.gluing_radius();
  const double b = smootherstep(p.norm() - (R - 1.0));  // radial blend on [R-1, R]
  std::array<double, 5> w{1.0 - b, 0, 0, 0, 0};
  if (b == 0.0) return w;
  std::array<double, 4> dist;
  for (int j = 0; j < 4; ++j) dist[static_cast<size_t>(j)] = cfg_.halfline_distance(j, p);
  std::array<double, 4> a;
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    double other = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
      if (i != j) other = std::min(other, dist[static_cast<size_t>(i)]);
    const double m = other - dist[static_cast<size_t>(j)];
    a[static_cast<size_t>(j)] = smootherstep((m + 2.0) / 2.0);  // width-2 bump
    sum += a[static_cast<size_t>(j)];
  }
  for (int j = 0; j < 4; ++j) w[static_cast<size_t>(j) + 1] = b * a[static_cast<size_t>(j)] / sum;
  return w;
}

double Ansatz::weight(int j, Vec2 p) const {
  return weights(p)[static_cast<size_t>(j)];
}

double Ansatz::raw_sum(const HeteroclinicProfile& prof, Vec2 p) const {
  const auto w = weights(p);
  double acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double sgn = (j % 2 == 0) ? -1.0 : 1.0;
    acc += sgn * w[static_cast<size_t>(j) + 1] *
           prof.value(cfg_.end(j).signed_distance(p));
  }
  return acc;
}

double Ansatz::value(const HeteroclinicProfile& prof, Vec2 p) const {
  return flip_ * raw_sum(prof, p);
}

bool Ansatz::in_omega_prime(int j, Vec2 p) const {
  const double R = cfg_.gluing_radius();
  if (j == 0) return p.norm() <= R - 1.0;
  if (p.norm() < R) return false;
  const double dj = cfg_.halfline_distance(j - 1, p);
  for (int i = 0; i < 4; ++i)
    if (i != j - 1 && !(dj < cfg_.halfline_distance(i, p) - 2.0)) return false;
  return true;
}

bool Ansatz::in_omega(int j, Vec2 p) const {
  const double R = cfg_.gluing_radius();
  if (j == 0) return p.norm() <= R + 1.0;
  if (p.norm() <= R - 1.0) return false;
  const double dj = cfg_.halfline_distance(j - 1, p);
  for (int i = 0; i < 4; ++i)
    if (i != j - 1 && !(dj < cfg_.halfline_distance(i, p) + 2.0)) return false;
  return true;
}

}  // namespace ac4
