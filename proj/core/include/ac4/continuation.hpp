#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ac4/solver.hpp"
#include "ac4/spectra.hpp"

namespace ac4 {

struct CurveSample {
  double theta_imposed = 0;
  double theta_extracted = 0;
  double r = 0;
  double residual = 0;
  double margin = 0;  // NaN when not computed
  std::optional<int> morse_index;
  std::string file;  // empty unless a sink stored the solution
};

struct DirectionReport {
  bool completed = true;
  double theta_failed = 0;
  std::string reason;
};

/// Ordered 1-parameter branch record; theta strictly increases along samples.
struct ModuliCurve {
  std::vector<CurveSample> samples;
  DirectionReport down, up;
};

struct ContinuationOptions {
  SolveOptions solve;
  int max_step_halvings = 6;
  bool compute_margin = true;
  double margin_R = 15.0;
  int margin_k = 6;
  bool compute_index = false;
  double index_R = 15.0;
  int jobs = 1;  // 2 runs the two marching directions concurrently
  /// Optional sink for accepted solutions; returns the stored file name.
  /// Must be safe to call from two threads when jobs > 1.
  std::function<std::string(const Solution&)> sink;
};

/// newton_solve at theta = pi/4, r0 = 0, then verify the saddle signature:
/// nodal polyline within 2h of the diagonal and classification near (0, 0).
Solution seed_saddle(const QuadrantGrid& grid, const Potential& pot,
                     const HeteroclinicProfile& prof,
                     const SolveOptions& opts = {});

/// Natural continuation in theta through [theta_min, theta_max] on a uniform
/// grid of `steps` samples, marching both directions from the seed with warm
/// starts. Failed steps are bisected up to max_step_halvings times; exhaustion
/// terminates that direction with a report instead of aborting the curve.
ModuliCurve continue_curve(const Solution& seed, const Potential& pot,
                           const HeteroclinicProfile& prof, double theta_min,
                           double theta_max, int steps,
                           const ContinuationOptions& opts = {});

/// The conjugation u -> -u(y, x): transposes and negates the field, checks
/// the residual is preserved and the classification negates.
Solution conjugate_solution(const Solution& sol, const Potential& pot,
                            const HeteroclinicProfile& prof);

}  // namespace ac4
