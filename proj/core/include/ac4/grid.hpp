#pragma once

#include <vector>

#include "ac4/errors.hpp"
#include "ac4/geometry.hpp"

namespace ac4 {

/// Uniform grid on the closed quadrant [0, L]^2 with points (i h, j h),
/// 0 <= i, j < n, n = L/h + 1. The axes x = 0 and y = 0 are grid lines.
class QuadrantGrid {
 public:
  QuadrantGrid(double L, double h);

  double length() const { return L_; }
  double spacing() const { return h_; }
  int n() const { return n_; }
  double coord(int i) const { return i * h_; }
  Vec2 point(int i, int j) const { return {coord(i), coord(j)}; }

  bool operator==(const QuadrantGrid& o) const {
    return L_ == o.L_ && h_ == o.h_ && n_ == o.n_;
  }

 private:
  double L_, h_;
  int n_;
};

/// Scalar samples on a QuadrantGrid, row-major with row index i (the x
/// direction). Value semantics; carries its grid.
class Field {
 public:
  explicit Field(const QuadrantGrid& g, double fill = 0.0)
      : grid_(g), v_(static_cast<size_t>(g.n()) * g.n(), fill) {}

  const QuadrantGrid& grid() const { return grid_; }
  int n() const { return grid_.n(); }

  double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * n() + j]; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * n() + j]; }

  std::vector<double>& data() { return v_; }
  const std::vector<double>& data() const { return v_; }

  /// sup norm over points excluding the outer edges i = n-1, j = n-1
  double max_abs_inner() const;
  /// sup norm over everything
  double max_abs() const;

  bool operator==(const Field& o) const { return grid_ == o.grid_ && v_ == o.v_; }

 private:
  QuadrantGrid grid_;
  std::vector<double> v_;
};

}  // namespace ac4
