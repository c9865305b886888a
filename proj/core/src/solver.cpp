#include "ac4/solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>

namespace ac4 {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> symmetrizing_weights(const QuadrantGrid& g) {
  const int m = g.n() - 1;
  std::vector<double> w(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      w[static_cast<size_t>(i) * m + j] =
          (i == 0 ? 1.0 : 2.0) * (j == 0 ? 1.0 : 2.0);
  return w;
}

SparseMat assemble_linearized(const Field& u, const Potential& p, double shift) {
  const int n = u.n();
  const int m = n - 1;
  const double ih2 = 1.0 / (u.grid().spacing() * u.grid().spacing());
  const std::vector<double> w = symmetrizing_weights(u.grid());
  auto idx = [m](int i, int j) { return i * m + j; };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(5) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int k = idx(i, j);
      trip.emplace_back(k, k, 4.0 * ih2 + p.deriv2(u(i, j)) + shift);
      for (auto [ii, jj] : {std::pair{i - 1, j}, std::pair{i + 1, j},
                            std::pair{i, j - 1}, std::pair{i, j + 1}}) {
        if (ii == -1) ii = 1;  // mirror axes
        if (jj == -1) jj = 1;
        if (ii >= m || jj >= m) continue;  // Dirichlet outer edge
        const int q = idx(ii, jj);
        const double s =
            std::sqrt(w[static_cast<size_t>(k)] / w[static_cast<size_t>(q)]);
        trip.emplace_back(k, q, -ih2 * s);
      }
    }
  SparseMat A(m * m, m * m);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

Eigen::VectorXd linear_solve(const SparseMat& A, const Eigen::VectorXd& b,
                             double tol) {
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Eigen::VectorXd::Zero(b.size());
  Eigen::SparseLU<SparseMat> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw LinearSolveError("linear_solve: factorization failed");
  Eigen::VectorXd x = lu.solve(b);
  for (int round = 0; round < 3; ++round) {
    const Eigen::VectorXd res = b - A * x;
    if (res.norm() <= tol * bnorm) return x;
    x += lu.solve(res);
  }
  if ((b - A * x).norm() > tol * bnorm)
    throw LinearSolveError("linear_solve: tolerance not met after refinement");
  return x;
}

namespace {

struct InnerResult {
  Field u;
  double rsup = 0;
  int iters = 0;
  std::vector<double> history;
};

double scaled_l2(const Field& res) {
  double acc = 0.0;
  const int n = res.n();
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) acc += res(i, j) * res(i, j);
  return res.grid().spacing() * std::sqrt(acc);
}

InnerResult newton_inner(Field u, const Potential& pot, const BoundaryFn& bc,
                         const SolveOptions& opts, bool warm) {
  const QuadrantGrid& g = u.grid();
  const int n = g.n(), m = n - 1;
  const std::vector<double> w = symmetrizing_weights(g);
  std::vector<double> sqw(w.size());
  for (size_t k = 0; k < w.size(); ++k) sqw[k] = std::sqrt(w[k]);

  // clamp the outer edges to the Dirichlet data
  for (int k = 0; k < n; ++k) {
    u(n - 1, k) = bc(g.point(n - 1, k));
    u(k, n - 1) = bc(g.point(k, n - 1));
  }

  double tau = warm ? opts.ptc_tau_warm : opts.ptc_tau0;
  InnerResult out{std::move(u), 0, 0, {}};
  Field res = residual(out.u, pot, bc);
  out.rsup = res.max_abs_inner();
  out.history.push_back(out.rsup);

  for (int it = 0; it < opts.max_newton; ++it) {
    if (opts.trace) opts.trace(it, out.rsup, tau);
    if (out.rsup <= opts.newton_tol) return out;
    if (out.u.max_abs() > 1.1)
      throw BlowUp("newton_solve: iterate left |u| <= 1.1", out.u);
    const double r2 = scaled_l2(res);

    const bool endgame = out.rsup < opts.ptc_switch;
    const double shift = endgame ? 0.0 : 1.0 / tau;
    const SparseMat A = assemble_linearized(out.u, pot, shift);
    Eigen::VectorXd b(m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        b[i * m + j] = sqw[static_cast<size_t>(i * m + j)] * res(i, j);
    Eigen::VectorXd x;
    try {
      x = linear_solve(A, b, opts.lin_tol);
    } catch (const LinearSolveError&) {
      tau = tau / 4.0;  // damping fallback
      if (tau < 1e-8)
        throw NonConvergence("newton_solve: linear solver stalled", out.u);
      ++out.iters;
      continue;
    }

    // damping: halve the step while the residual norm does not decrease
    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half <= opts.max_damping; ++half) {
      Field trial = out.u;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          trial(i, j) += lambda * x[i * m + j] / sqw[static_cast<size_t>(i * m + j)];
      if (trial.max_abs() > 1.1) {  // keep iterates within the well extension
        lambda *= 0.5;
        continue;
      }
      Field tres = residual(trial, pot, bc);
      const double tsup = tres.max_abs_inner();
      const double t2 = scaled_l2(tres);
      if (t2 < r2 * (1.0 - 1e-4 * lambda) || tsup <= opts.newton_tol) {
        out.u = std::move(trial);
        res = std::move(tres);
        out.rsup = tsup;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++out.iters;
    out.history.push_back(out.rsup);
    if (!accepted) {
      tau = tau / 4.0;  // retreat toward gradient flow
      if (tau < 1e-8)
        throw NonConvergence("newton_solve: damping exhausted", out.u);
      continue;
    }
    if (lambda == 1.0 && !endgame) tau *= opts.ptc_rho;
  }
  if (out.rsup <= opts.newton_tol) return out;
  throw NonConvergence("newton_solve: iteration limit reached", out.u);
}

}  // namespace

Solution newton_solve(const QuadrantGrid& grid, const Potential& pot,
                      const HeteroclinicProfile& prof, double theta, double r0,
                      const std::optional<Field>& initial,
                      const SolveOptions& opts) {
  if (!(theta > 0.0 && theta < kPi / 2))
    throw DomainError("newton_solve: theta must lie in (0, pi/2)");
  const double c0 = energy_constant(pot, prof);

  double r = r0;
  std::optional<Field> field = initial;
  bool warm = initial.has_value();
  Solution sol{grid, Field(grid), pot.id(), theta, r, 0, 0, 0, 0, {}, {}};

  for (int rit = 0; rit < opts.max_r_iter; ++rit) {
    const Ansatz an(EndConfiguration::symmetric(theta, r));
    const BoundaryFn bc = ansatz_boundary(an, prof);
    if (!field) field = ansatz_samples(grid, an, prof);

    InnerResult inner{Field(grid), 0, 0, {}};
    try {
      inner = newton_inner(*field, pot, bc, opts, warm);
    } catch (const BlowUp&) {
      throw;
    } catch (const NonConvergence&) {
      if (!warm) throw;
      // a stale warm start can sit outside the basin; retry from the ansatz
      inner = newton_inner(ansatz_samples(grid, an, prof), pot, bc, opts, false);
    }
    field = inner.u;
    warm = true;

    sol.newton_iters_total += inner.iters;
    sol.newton_iters_last = inner.iters;
    sol.residual_history = inner.history;
    sol.residual_sup = inner.rsup;
    sol.r_iters = rit + 1;

    const double r_new = extract_r(*field, pot, c0).value;
    if (std::abs(r_new - r) < opts.r_tol) {
      sol.field = std::move(*field);
      sol.r = r;
      sol.cls = classify(sol.field, pot, c0);
      if (!strictly_inside_well(sol.field))
        throw AccuracyError("newton_solve: |u| < 1 violated on a converged field");
      if (!monotonicity_check(sol.field).ok)
        throw AccuracyError("newton_solve: monotonicity violated on a converged field");
      return sol;
    }
    r = r_new;
  }
  throw NonConvergence("newton_solve: r fixed point did not settle",
                       field ? *field : Field(grid));
}

}  // namespace ac4
