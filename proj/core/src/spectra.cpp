#include "ac4/spectra.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace ac4 {

std::string sector_code(SymmetrySector s) {
  return std::string(1, s.even_x ? 'e' : 'o') + (s.even_y ? 'e' : 'o');
}

SymmetrySector sector_from_code(const std::string& code) {
  if (code.size() != 2 || (code[0] != 'e' && code[0] != 'o') ||
      (code[1] != 'e' && code[1] != 'o'))
    throw DomainError("sector code must be one of ee, eo, oe, oo");
  return {code[0] == 'e', code[1] == 'e'};
}

SectorOperator sector_operator(const Field& u, const Potential& p,
                               SymmetrySector s, double R) {
  const QuadrantGrid& g = u.grid();
  if (!(R > 0) || R > g.length())
    throw DomainError("sector_operator: need 0 < R <= L");
  const int n = g.n();
  const double h = g.spacing();
  const double ih2 = 1.0 / (h * h);
  const int i0 = s.even_x ? 0 : 1;
  const int j0 = s.even_y ? 0 : 1;

  SectorOperator op;
  std::vector<std::vector<int>> id(static_cast<size_t>(n),
                                   std::vector<int>(static_cast<size_t>(n), -1));
  const double R2 = R * R;
  for (int i = i0; i < n; ++i)
    for (int j = j0; j < n; ++j) {
      const double x = g.coord(i), y = g.coord(j);
      if (x * x + y * y < R2) {
        id[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            static_cast<int>(op.points.size());
        op.points.emplace_back(i, j);
        op.weights.push_back((i == 0 ? 1.0 : 2.0) * (j == 0 ? 1.0 : 2.0));
      }
    }
  const int N = static_cast<int>(op.points.size());
  if (N == 0) throw DomainError("sector_operator: empty domain");

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(5) * N);
  for (int k = 0; k < N; ++k) {
    const auto [i, j] = op.points[static_cast<size_t>(k)];
    trip.emplace_back(k, k, 4.0 * ih2 + p.deriv2(u(i, j)));
    for (auto [ii, jj] : {std::pair{i - 1, j}, std::pair{i + 1, j},
                          std::pair{i, j - 1}, std::pair{i, j + 1}}) {
      if (ii == -1) {
        if (!s.even_x) continue;  // odd: zero line on the axis
        ii = 1;
      }
      if (jj == -1) {
        if (!s.even_y) continue;
        jj = 1;
      }
      if (ii >= n || jj >= n) continue;
      const int q = id[static_cast<size_t>(ii)][static_cast<size_t>(jj)];
      if (q < 0) continue;  // zero Dirichlet outside the ball
      trip.emplace_back(
          k, q,
          -ih2 * std::sqrt(op.weights[static_cast<size_t>(k)] /
                           op.weights[static_cast<size_t>(q)]));
    }
  }
  op.matrix.resize(N, N);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();
  return op;
}

namespace {

struct EigenPairs {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;
};

// deterministic start vector
Eigen::VectorXd seeded_vector(int n) {
  Eigen::VectorXd v(n);
  uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    v[i] = 0.5 + static_cast<double>(state >> 40) / 3.3554432e7;
  }
  v.normalize();
  return v;
}

double pair_residual(const SparseMat& A, const Eigen::VectorXd& v, double lam) {
  return (A * v - lam * v).norm() / v.norm();
}

EigenPairs dense_smallest(const SparseMat& A, int k) {
  Eigen::MatrixXd D(A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
  EigenPairs out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  out.vectors = es.eigenvectors().leftCols(k);
  return out;
}

// k algebraically smallest eigenpairs by shift-invert Lanczos with full
// reorthogonalization, then one Rayleigh-Ritz refinement in A-space.
EigenPairs smallest_eigenpairs(const SparseMat& A, int k, double sigma = -10.0) {
  const int n = static_cast<int>(A.rows());
  k = std::min(k, n);
  if (n <= 900) return dense_smallest(A, k);

  SparseMat shifted = A;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) -= sigma;
  shifted.makeCompressed();
  Eigen::SimplicialLDLT<SparseMat> ldlt(shifted);
  if (ldlt.info() != Eigen::Success)
    throw AccuracyError("eigensolver: shifted factorization failed");

  const int maxit = std::min(n, std::max(6 * k + 60, 150));
  Eigen::MatrixXd V(n, maxit + 1);
  Eigen::VectorXd alpha(maxit), beta(maxit);
  V.col(0) = seeded_vector(n);
  int m = 0;
  for (; m < maxit; ++m) {
    Eigen::VectorXd w = ldlt.solve(V.col(m));
    alpha[m] = V.col(m).dot(w);
    w -= alpha[m] * V.col(m);
    if (m > 0) w -= beta[m - 1] * V.col(m - 1);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= V.leftCols(m + 1) * (V.leftCols(m + 1).transpose() * w);
    beta[m] = w.norm();
    if (beta[m] < 1e-13) {
      ++m;
      break;  // invariant subspace found
    }
    V.col(m + 1) = w / beta[m];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tr;
  tr.computeFromTridiagonal(alpha.head(m), beta.head(m - 1));
  k = std::min(k, m);  // happy breakdown can exhaust the subspace
  // largest nu of (A - sigma)^-1 correspond to the smallest lambda of A
  Eigen::MatrixXd X(n, k);
  for (int c = 0; c < k; ++c)
    X.col(c) = V.leftCols(m) * tr.eigenvectors().col(m - 1 - c);

  // Rayleigh-Ritz refinement in A-space on an inverse-iterated basis
  Eigen::MatrixXd Z(n, k);
  for (int c = 0; c < k; ++c) Z.col(c) = ldlt.solve(X.col(c));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  Eigen::MatrixXd small = Q.transpose() * (A * Q);
  small = 0.5 * (small + small.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);

  EigenPairs out;
  out.vectors = Q * es.eigenvectors();
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  return out;
}

EigenPairs verified_smallest(const SparseMat& A, int k) {
  EigenPairs pairs = smallest_eigenpairs(A, k);
  const double tol = 1e-8;
  for (size_t c = 0; c < pairs.values.size(); ++c) {
    if (pair_residual(A, pairs.vectors.col(static_cast<int>(c)),
                      pairs.values[c]) > tol) {
      std::vector<double> ok(pairs.values.begin(),
                             pairs.values.begin() + static_cast<long>(c));
      throw StagnationError("eigensolver: pair residual above contract", ok);
    }
  }
  return pairs;
}

}  // namespace

SpectrumReport sector_eigenvalues(const Field& u, const Potential& p,
                                  SymmetrySector s, double R, int k) {
  if (k < 1) throw DomainError("sector_eigenvalues: k must be >= 1");
  const SectorOperator op = sector_operator(u, p, s, R);
  const int kk = std::min<int>(k, static_cast<int>(op.matrix.rows()));
  EigenPairs pairs = verified_smallest(op.matrix, kk);

  SpectrumReport rep;
  rep.sector = s;
  rep.R = R;
  rep.eigenvalues = pairs.values;
  rep.eigenvectors = pairs.vectors;
  rep.far_mass.resize(pairs.values.size());
  const QuadrantGrid& g = u.grid();
  for (size_t c = 0; c < pairs.values.size(); ++c) {
    double far = 0.0, tot = 0.0;
    for (size_t q = 0; q < op.points.size(); ++q) {
      const auto [i, j] = op.points[q];
      const double mass = pairs.vectors(static_cast<int>(q), static_cast<int>(c)) *
                          pairs.vectors(static_cast<int>(q), static_cast<int>(c));
      tot += mass;
      if (std::hypot(g.coord(i), g.coord(j)) > 0.5 * R) far += mass;
    }
    rep.far_mass[c] = far / tot;
    if (pairs.values[c] < 0.0) ++rep.negative_count;
  }
  rep.smallest_abs = rep.eigenvalues.empty()
                         ? 0.0
                         : *std::min_element(
                               rep.eigenvalues.begin(), rep.eigenvalues.end(),
                               [](double a, double b) {
                                 return std::abs(a) < std::abs(b);
                               });
  rep.smallest_abs = std::abs(rep.smallest_abs);
  return rep;
}

double nondegeneracy_margin(const Field& u, const Potential& p, double R,
                            int k) {
  const SpectrumReport rep =
      sector_eigenvalues(u, p, SymmetrySector{true, true}, R, k);
  double margin = std::numeric_limits<double>::infinity();
  bool kept = false;
  for (size_t c = 0; c < rep.eigenvalues.size(); ++c) {
    if (rep.far_mass[c] > 0.4) continue;  // truncation artifact along the ends
    kept = true;
    margin = std::min(margin, std::abs(rep.eigenvalues[c]));
  }
  if (!kept)
    throw InconclusiveError("nondegeneracy_margin: every mode was discarded");
  return margin;
}

namespace {

int sector_negative_count(const Field& u, const Potential& p, SymmetrySector s,
                          double R) {
  const SectorOperator op = sector_operator(u, p, s, R);
  const int n = static_cast<int>(op.matrix.rows());
  for (int k = 8; k <= std::max(n, 8); k *= 2) {
    const int kk = std::min(k, n);
    EigenPairs pairs = verified_smallest(op.matrix, kk);
    if (pairs.values.back() >= 0.0 || kk == n) {
      int cnt = 0;
      for (double v : pairs.values) cnt += v < 0.0;
      return cnt;
    }
    if (kk >= 128)
      throw AccuracyError("morse_index: more than 128 negative modes");
  }
  return 0;
}

}  // namespace

int morse_index(const Field& u, const Potential& p, double R) {
  int total = 0;
  for (const SymmetrySector& s : all_sectors())
    total += sector_negative_count(u, p, s, R);
  return total;
}

IndexTable index_stabilization(const Field& u, const Potential& p,
                               const std::vector<double>& radii) {
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw DomainError("index_stabilization: radii must increase");
  IndexTable table;
  table.radii = radii;
  for (double R : radii) {
    std::array<int, 4> per{};
    int t = 0, s = 0;
    for (const SymmetrySector& sec : all_sectors()) {
      per[static_cast<size_t>(s)] = sector_negative_count(u, p, sec, R);
      t += per[static_cast<size_t>(s)];
      ++s;
    }
    table.per_sector.push_back(per);
    table.total.push_back(t);
  }
  table.nondecreasing = true;
  for (size_t i = 1; i < table.total.size(); ++i)
    if (table.total[i] < table.total[i - 1]) table.nondecreasing = false;
  const size_t n = table.total.size();
  table.stabilized = n >= 3 && table.total[n - 1] == table.total[n - 2] &&
                     table.total[n - 2] == table.total[n - 3];
  return table;
}

DecayFit decay_rate(const Field& u, const NodalCurve& curve) {
  const QuadrantGrid& g = u.grid();
  const double dmin = 3.0, dmax = 0.5 * g.length();
  std::vector<std::pair<double, double>> pts;  // (dist, log|1-u^2|)
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double d = polyline_distance(curve, g.point(i, j));
      if (d < dmin || d > dmax) continue;
      const double q = std::abs(1.0 - u(i, j) * u(i, j));
      if (q <= 0.0) continue;
      pts.emplace_back(d, std::log(q));
    }
  if (pts.size() < 30)
    throw DomainError("decay_rate: too few sample points in [3, L/2]");

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(pts.size());
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (auto [x, y] : pts) {
    const double e = y - (slope * x + icpt);
    ss_res += e * e;
    ss_tot += (y - ybar) * (y - ybar);
  }
  DecayFit fit;
  fit.alpha = -slope;
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.samples = static_cast<int>(pts.size());
  // envelope constant at the fitted rate: the decay bound holds pointwise
  double logc = -std::numeric_limits<double>::infinity();
  for (auto [x, y] : pts) logc = std::max(logc, y + fit.alpha * x);
  fit.C = std::exp(logc);
  return fit;
}

}  // namespace ac4
