#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ac4/balance.hpp"
#include "ac4/grid.hpp"
#include "ac4/operators.hpp"
#include "ac4/potential.hpp"

namespace ac4 {

struct SolveOptions {
  double newton_tol = 1e-9;  // sup-norm of the residual
  int max_newton = 30;
  double r_tol = 1e-6;
  int max_r_iter = 20;
  int max_damping = 8;  // step halvings before the pseudo-time retreat
  double lin_tol = 1e-10;

  // damping schedule: pseudo-transient shift 1/tau ramped up geometrically,
  // switched off for the quadratic endgame
  double ptc_tau0 = 1.0;
  double ptc_rho = 3.0;
  double ptc_switch = 1e-4;
  double ptc_tau_warm = 1e8;  // initial tau when a warm start is supplied

  /// Optional per-iteration monitor: (iteration, residual sup, tau).
  std::function<void(int, double, double)> trace;
};

/// Newton iteration failed; carries the last iterate for diagnostics.
struct NonConvergence : Error {
  Field last_iterate;
  NonConvergence(const std::string& msg, Field iterate)
      : Error(msg), last_iterate(std::move(iterate)) {}
};

/// |u| exceeded 1 + 0.1 during the iteration.
struct BlowUp : NonConvergence {
  using NonConvergence::NonConvergence;
};

struct LinearSolveError : Error {
  using Error::Error;
};

/// A converged 4-ended solution on the quadrant with its classification.
struct Solution {
  QuadrantGrid grid;
  Field field;
  std::string potential_id;
  double theta_imposed = 0;
  double r = 0;  // offset resolved by the balancing fixed point
  double residual_sup = 0;
  int newton_iters_total = 0;
  int newton_iters_last = 0;
  int r_iters = 0;
  Classification cls;
  std::vector<double> residual_history;  // last inner Newton run
};

using SparseMat = Eigen::SparseMatrix<double>;

/// Reflection-multiplicity weights over the unknowns (i, j) in [0, n-2]^2,
/// flattened row-major: 4 interior, 2 on an axis, 1 at the origin.
std::vector<double> symmetrizing_weights(const QuadrantGrid& g);

/// Symmetrized W^{1/2} (-Delta + F''(u) + shift) W^{-1/2} on the unknowns,
/// with mirror axes and zero Dirichlet outer edges.
SparseMat assemble_linearized(const Field& u, const Potential& p,
                              double shift = 0.0);

/// Direct sparse factorization with iterative refinement; throws
/// LinearSolveError when ||Ax-b|| > tol ||b|| cannot be met. Deterministic.
Eigen::VectorXd linear_solve(const SparseMat& A, const Eigen::VectorXd& b,
                             double tol);

/// Newton solve at fixed theta with the offset r resolved self-consistently:
/// build the symmetric ansatz at (theta, r), solve the Dirichlet problem,
/// re-extract r from the balancing integrals, repeat.
Solution newton_solve(const QuadrantGrid& grid, const Potential& pot,
                      const HeteroclinicProfile& prof, double theta, double r0,
                      const std::optional<Field>& initial = std::nullopt,
                      const SolveOptions& opts = {});

}  // namespace ac4
