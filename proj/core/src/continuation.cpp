#include "ac4/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "ac4/nodal.hpp"

namespace ac4 {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

Solution seed_saddle(const QuadrantGrid& grid, const Potential& pot,
                     const HeteroclinicProfile& prof, const SolveOptions& opts) {
  Solution sol = newton_solve(grid, pot, prof, kPi / 4, 0.0, std::nullopt, opts);
  const NodalCurve curve = nodal_curve(sol.field);
  double dev = 0.0;
  for (const Vec2& p : curve.points)
    dev = std::max(dev, std::abs(p.y - p.x) / std::sqrt(2.0));
  if (dev > 2.0 * grid.spacing())
    throw AccuracyError("seed_saddle: nodal set strays from the diagonal");
  if (std::abs(sol.cls.theta_minus_quarter_pi) > 1e-3 || std::abs(sol.cls.r) > 1e-2)
    throw AccuracyError("seed_saddle: classification far from (0, 0)");
  return sol;
}

namespace {

CurveSample make_sample(const Solution& sol, const Potential& pot,
                        const ContinuationOptions& opts) {
  CurveSample s;
  s.theta_imposed = sol.theta_imposed;
  s.theta_extracted = sol.cls.theta_minus_quarter_pi + kPi / 4;
  s.r = sol.cls.r;
  s.residual = sol.residual_sup;
  s.margin = kNaN;
  if (opts.compute_margin) {
    const double R = std::min(opts.margin_R, sol.grid.length());
    s.margin = nondegeneracy_margin(sol.field, pot, R, opts.margin_k);
  }
  if (opts.compute_index) {
    const double R = std::min(opts.index_R, sol.grid.length());
    s.morse_index = morse_index(sol.field, pot, R);
  }
  if (opts.sink) s.file = opts.sink(sol);
  return s;
}

struct MarchResult {
  std::vector<CurveSample> samples;
  DirectionReport report;
};

MarchResult march(const Solution& seed, const Potential& pot,
                  const HeteroclinicProfile& prof,
                  const std::vector<double>& targets, bool upward,
                  const ContinuationOptions& opts) {
  MarchResult out;
  const double theta_seed = seed.theta_imposed;
  std::vector<double> dir_targets;
  for (double t : targets)
    if (upward ? t > theta_seed : t < theta_seed) dir_targets.push_back(t);
  if (upward)
    std::sort(dir_targets.begin(), dir_targets.end());
  else
    std::sort(dir_targets.begin(), dir_targets.end(), std::greater<>());

  Field warm = seed.field;
  double r_prev = seed.r;
  double theta_prev = theta_seed;
  for (double target : dir_targets) {
    double theta_at = theta_prev;
    while (true) {
      // bisect toward the target until a solve succeeds
      double step_theta = target;
      bool solved = false;
      Solution sol{seed.grid, Field(seed.grid), "", 0, 0, 0, 0, 0, 0, {}, {}};
      for (int halving = 0; halving <= opts.max_step_halvings; ++halving) {
        if (std::abs(step_theta - theta_at) < 1e-9) break;
        try {
          sol = newton_solve(seed.grid, pot, prof, step_theta, r_prev, warm,
                             opts.solve);
          solved = true;
          break;
        } catch (const Error&) {
          step_theta = 0.5 * (theta_at + step_theta);
        }
      }
      if (!solved) {
        out.report.completed = false;
        out.report.theta_failed = target;
        out.report.reason = "step halvings exhausted; fold or loss of convergence";
        return out;
      }
      out.samples.push_back(make_sample(sol, pot, opts));
      warm = sol.field;
      r_prev = sol.r;
      theta_at = step_theta;
      if (step_theta == target) break;
    }
    theta_prev = target;
  }
  return out;
}

}  // namespace

ModuliCurve continue_curve(const Solution& seed, const Potential& pot,
                           const HeteroclinicProfile& prof, double theta_min,
                           double theta_max, int steps,
                           const ContinuationOptions& opts) {
  const double theta_seed = seed.theta_imposed;
  if (!(theta_min < theta_seed && theta_seed < theta_max))
    throw DomainError("continue_curve: seed angle must lie inside the range");
  if (!(theta_min > 0 && theta_max < kPi / 2))
    throw DomainError("continue_curve: range must lie inside (0, pi/2)");
  if (steps < 2) throw DomainError("continue_curve: need at least 2 steps");

  std::vector<double> targets(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i)
    targets[static_cast<size_t>(i)] =
        theta_min + (theta_max - theta_min) * i / (steps - 1);

  ModuliCurve curve;
  // the seed itself is a sample whenever its angle sits on the target grid
  for (double t : targets)
    if (std::abs(t - theta_seed) < 1e-12)
      curve.samples.push_back(make_sample(seed, pot, opts));

  MarchResult down, up;
  if (opts.jobs > 1) {
    auto fut = std::async(std::launch::async, [&] {
      return march(seed, pot, prof, targets, false, opts);
    });
    up = march(seed, pot, prof, targets, true, opts);
    down = fut.get();
  } else {
    down = march(seed, pot, prof, targets, false, opts);
    up = march(seed, pot, prof, targets, true, opts);
  }
  curve.down = down.report;
  curve.up = up.report;
  for (auto& s : down.samples) curve.samples.push_back(std::move(s));
  for (auto& s : up.samples) curve.samples.push_back(std::move(s));

  std::sort(curve.samples.begin(), curve.samples.end(),
            [](const CurveSample& a, const CurveSample& b) {
              return a.theta_imposed < b.theta_imposed;
            });
  return curve;
}

Solution conjugate_solution(const Solution& sol, const Potential& pot,
                            const HeteroclinicProfile& prof) {
  const QuadrantGrid& g = sol.grid;
  const int n = g.n();
  Solution out = sol;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.field(i, j) = -sol.field(j, i);
  out.theta_imposed = kPi / 2 - sol.theta_imposed;
  out.r = -sol.r;

  const Field res = residual_stored_bc(out.field, pot);
  out.residual_sup = res.max_abs_inner();
  if (out.residual_sup > std::max(sol.residual_sup * 4.0, 1e-8))
    throw AccuracyError("conjugate_solution: residual not preserved");

  const double c0 = energy_constant(pot, prof);
  out.cls = classify(out.field, pot, c0);
  const double tol_theta = 2e-3, tol_r = 2e-2;  // twice the extraction tolerance
  if (std::abs(out.cls.theta_minus_quarter_pi + sol.cls.theta_minus_quarter_pi) >
          tol_theta ||
      std::abs(out.cls.r + sol.cls.r) > tol_r)
    throw AccuracyError("conjugate_solution: classification did not negate");
  return out;
}

}  // namespace ac4
