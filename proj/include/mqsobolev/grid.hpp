// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace mqs {

using Point = std::array<double, 2>;   // second entry is 0 on 1D grids
using Lattice = std::array<long, 2>;   // per-axis step index

/// Uniform grid over a box in R^1 or R^2, the same spacing h on every axis.
/// Point j sits at origin + lattice(j) * h; axis 0 varies fastest.
class Grid {
 public:
  static Grid make(int dim, const std::vector<double>& origin, const std::vector<double>& extent,
                   double h);

  int dim() const { return dim_; }
  double h() const { return h_; }
  double origin(int axis) const { return origin_[axis]; }
  double extent(int axis) const { return extent_[axis]; }
  long count(int axis) const { return counts_[axis]; }
  std::size_t size() const { return static_cast<std::size_t>(counts_[0] * counts_[1]); }

  Lattice lattice(std::size_t index) const {
    const long i = static_cast<long>(index);
    return {i % counts_[0], i / counts_[0]};
  }
  bool contains(const Lattice& l) const {
    return l[0] >= 0 && l[0] < counts_[0] && l[1] >= 0 && l[1] < counts_[1];
  }
  std::size_t index(const Lattice& l) const {
    return static_cast<std::size_t>(l[0] + counts_[0] * l[1]);
  }
  double coord(std::size_t index, int axis) const {
    return origin_[axis] + static_cast<double>(lattice(index)[axis]) * h_;
  }
  Point point(std::size_t index) const;

  /// Squared lattice distance |a - b|^2 / h^2, an exact integer.
  long squared_steps(std::size_t a, std::size_t b) const {
    const Lattice la = lattice(a), lb = lattice(b);
    const long d0 = la[0] - lb[0], d1 = la[1] - lb[1];
    return d0 * d0 + d1 * d1;
  }
  double distance(std::size_t a, std::size_t b) const;
  double step_distance(long squared) const;

  /// Lattice steps from the point to the nearest face of the box.
  long margin(std::size_t index) const;
  double diameter() const;
  /// Lebesgue measure attributed to one grid point (h^dim).
  double cell_measure() const;

  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_ = 1;
  double h_ = 1.0;
  std::array<double, 2> origin_{0.0, 0.0};
  std::array<double, 2> extent_{0.0, 0.0};
  std::array<long, 2> counts_{1, 1};
};

/// Real samples of f, one per grid point.
struct GridFunction {
  GridFunction(Grid g, std::vector<double> v);
  Grid grid;
  std::vector<double> values;
};

/// Nonnegative per-point values (maximal fields, quotient fields, metric gradients).
struct ScalarField {
  ScalarField(Grid g, std::vector<double> v, std::string label_text);
  Grid grid;
  std::vector<double> values;
  std::string label;
};

struct VectorField {
  Grid grid;
  std::vector<std::vector<double>> components;  // one per axis
  ScalarField norm() const;
};

/// Grid indices z with 0 < |z - center| < r, ascending.
std::vector<std::size_t> ball_indices(const Grid& grid, std::size_t center, double r);

/// Grid indices z != x, y with |z - x| < r and |z - y| < r, r = |x - y|, ascending.
std::vector<std::size_t> lens_indices(const Grid& grid, std::size_t x, std::size_t y);

/// Central differences inside, one-sided differences on the boundary.
VectorField gradient(const GridFunction& f);

}  // namespace mqs
