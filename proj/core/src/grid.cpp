#include "ac4/grid.hpp"

#include <cmath>

namespace ac4 {

QuadrantGrid::QuadrantGrid(double L, double h) : L_(L), h_(h) {
  if (!(L > 0) || !(h > 0)) throw DomainError("grid: L and h must be positive");
  const double ratio = L / h;
  const double r = std::round(ratio);
  if (std::abs(ratio - r) > 1e-9 * ratio)
    throw DomainError("grid: L/h must be integral");
  n_ = static_cast<int>(r) + 1;
  if (n_ < 3) throw DomainError("grid: need at least 3 points per axis");
}

double Field::max_abs_inner() const {
  double m = 0.0;
  const int nn = n();
  for (int i = 0; i < nn - 1; ++i)
    for (int j = 0; j < nn - 1; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double Field::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace ac4
