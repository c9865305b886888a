#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <string>
#include <vector>

#include "ac4/grid.hpp"
#include "ac4/nodal.hpp"
#include "ac4/potential.hpp"

namespace ac4 {

using SparseMat = Eigen::SparseMatrix<double>;

/// Parity across x = 0 and y = 0. Even parity keeps the axis as a mirror
/// (Neumann) line; odd parity imposes a zero (Dirichlet) line.
struct SymmetrySector {
  bool even_x = true, even_y = true;
};
std::string sector_code(SymmetrySector s);         // "ee", "eo", "oe", "oo"
SymmetrySector sector_from_code(const std::string& code);
inline std::array<SymmetrySector, 4> all_sectors() {
  return {SymmetrySector{true, true}, SymmetrySector{true, false},
          SymmetrySector{false, true}, SymmetrySector{false, false}};
}

/// Discrete L = -Delta + F''(u) on the quadrant portion of the ball B_R,
/// reduced to one symmetry sector and symmetrized by the reflection
/// multiplicities. Eigenvectors are in the weighted coordinates psi =
/// W^{1/2} phi, so |psi|^2 integrates mass over the whole plane.
struct SectorOperator {
  SparseMat matrix;
  std::vector<std::pair<int, int>> points;  // grid index per unknown
  std::vector<double> weights;
};
SectorOperator sector_operator(const Field& u, const Potential& p,
                               SymmetrySector s, double R);

struct SpectrumReport {
  SymmetrySector sector;
  double R = 0;
  std::vector<double> eigenvalues;  // k algebraically smallest, ascending
  Eigen::MatrixXd eigenvectors;     // weighted coordinates, one column each
  std::vector<double> far_mass;     // mass fraction beyond R/2 per mode
  int negative_count = 0;
  double smallest_abs = 0;
};

/// Raised when the eigeniteration cannot certify the requested pairs;
/// carries whatever converged.
struct StagnationError : AccuracyError {
  std::vector<double> partial;
  StagnationError(const std::string& msg, std::vector<double> vals)
      : AccuracyError(msg), partial(std::move(vals)) {}
};

/// k algebraically smallest eigenpairs; every returned pair satisfies
/// ||L phi - lambda phi||_2 <= 1e-8 ||phi||_2.
SpectrumReport sector_eigenvalues(const Field& u, const Potential& p,
                                  SymmetrySector s, double R, int k);

struct InconclusiveError : AccuracyError {
  using AccuracyError::AccuracyError;
};

/// min |lambda| over the even-even report after discarding far-field modes
/// (more than 40% of their mass beyond R/2), which are artifacts of the
/// Dirichlet truncation along the ends. Throws InconclusiveError when every
/// mode is discarded.
double nondegeneracy_margin(const Field& u, const Potential& p, double R,
                            int k);

/// Negative Dirichlet eigenvalues of L on B_R summed over the four sectors.
int morse_index(const Field& u, const Potential& p, double R);

struct IndexTable {
  std::vector<double> radii;
  std::vector<std::array<int, 4>> per_sector;  // ee, eo, oe, oo
  std::vector<int> total;
  bool nondecreasing = false;
  bool stabilized = false;  // last three totals agree
};
IndexTable index_stabilization(const Field& u, const Potential& p,
                               const std::vector<double>& radii);

/// Least-squares fit of log|1 - u^2| against distance to the nodal curve
/// over points with distance in [3, L/2]. alpha and r2 come from the fit;
/// C is the envelope constant at the fitted rate, so
/// |1 - u^2| <= C e^{-alpha dist} holds at every sampled point.
struct DecayFit {
  double alpha = 0, C = 0, r2 = 0;
  int samples = 0;
};
DecayFit decay_rate(const Field& u, const NodalCurve& curve);

}  // namespace ac4
