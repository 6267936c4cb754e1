// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/grid.hpp"

#include <algorithm>
#include <cmath>

#include "mqsobolev/error.hpp"

namespace mqs {

Grid Grid::make(int dim, const std::vector<double>& origin, const std::vector<double>& extent,
                double h) {
  require(dim == 1 || dim == 2, Errc::unsupported_dimension,
          "grid dimension must be 1 or 2, got " + std::to_string(dim));
  require(std::isfinite(h) && h > 0.0, Errc::invalid_argument, "grid spacing h must be positive");
  require(origin.size() == static_cast<std::size_t>(dim) &&
              extent.size() == static_cast<std::size_t>(dim),
          Errc::size_mismatch, "origin and extent need one entry per axis");
  Grid g;
  g.dim_ = dim;
  g.h_ = h;
  for (int a = 0; a < dim; ++a) {
    require(std::isfinite(origin[a]) && std::isfinite(extent[a]), Errc::invalid_argument,
            "origin and extent must be finite");
    require(extent[a] >= h, Errc::invalid_argument, "extent smaller than h on axis " + std::to_string(a));
    g.origin_[a] = origin[a];
    g.extent_[a] = extent[a];
    g.counts_[a] = std::lround(extent[a] / h) + 1;
  }
  return g;
}

Point Grid::point(std::size_t index) const {
  return {coord(index, 0), dim_ == 2 ? coord(index, 1) : 0.0};
}

double Grid::step_distance(long squared) const {
  return h_ * std::sqrt(static_cast<double>(squared));
}

double Grid::distance(std::size_t a, std::size_t b) const { return step_distance(squared_steps(a, b)); }

long Grid::margin(std::size_t index) const {
  const Lattice l = lattice(index);
  long m = std::min(l[0], counts_[0] - 1 - l[0]);
  if (dim_ == 2) m = std::min({m, l[1], counts_[1] - 1 - l[1]});
  return m;
}

double Grid::diameter() const {
  const double a = static_cast<double>(counts_[0] - 1);
  const double b = static_cast<double>(counts_[1] - 1);
  return h_ * std::sqrt(a * a + b * b);
}

double Grid::cell_measure() const { return dim_ == 2 ? h_ * h_ : h_; }

bool Grid::operator==(const Grid& o) const {
  return dim_ == o.dim_ && h_ == o.h_ && origin_ == o.origin_ && counts_ == o.counts_;
}

GridFunction::GridFunction(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  require(values.size() == grid.size(), Errc::size_mismatch,
          "grid function needs one value per grid point");
  for (double x : values) require(std::isfinite(x), Errc::invalid_argument, "grid function values must be finite");
}

ScalarField::ScalarField(Grid g, std::vector<double> v, std::string label_text)
    : grid(g), values(std::move(v)), label(std::move(label_text)) {
  require(values.size() == grid.size(), Errc::size_mismatch,
          "scalar field needs one value per grid point");
  for (double x : values)
    require(std::isfinite(x) && x >= 0.0, Errc::invalid_argument,
            "scalar field values must be finite and nonnegative");
}

ScalarField VectorField::norm() const {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    double s = 0.0;
    for (const auto& c : components) s += c[j] * c[j];
    out[j] = std::sqrt(s);
  }
  return ScalarField(grid, std::move(out), "|grad f|");
}

namespace {

void check_index(const Grid& grid, std::size_t i) {
  require(i < grid.size(), Errc::invalid_argument, "point index out of range");
}

}  // namespace

std::vector<std::size_t> ball_indices(const Grid& grid, std::size_t center, double r) {
  check_index(grid, center);
  require(r > 0.0, Errc::invalid_argument, "ball radius must be positive");
  std::vector<std::size_t> out;
  const Lattice c = grid.lattice(center);
  const long reach = static_cast<long>(std::ceil(r / grid.h()));
  const long lo1 = grid.dim() == 2 ? -reach : 0, hi1 = grid.dim() == 2 ? reach : 0;
  for (long d1 = lo1; d1 <= hi1; ++d1)
    for (long d0 = -reach; d0 <= reach; ++d0) {
      const Lattice z{c[0] + d0, c[1] + d1};
      if (!grid.contains(z) || (d0 == 0 && d1 == 0)) continue;
      if (grid.step_distance(d0 * d0 + d1 * d1) < r) out.push_back(grid.index(z));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> lens_indices(const Grid& grid, std::size_t x, std::size_t y) {
  check_index(grid, x);
  check_index(grid, y);
  require(x != y, Errc::invalid_argument, "lens needs two distinct points");
  const long n2 = grid.squared_steps(x, y);
  std::vector<std::size_t> out;
  for (std::size_t z : ball_indices(grid, x, grid.step_distance(n2))) {
    if (z == y) continue;
    // membership decided on exact lattice norms
    if (grid.squared_steps(z, x) < n2 && grid.squared_steps(z, y) < n2) out.push_back(z);
  }
  return out;
}

VectorField gradient(const GridFunction& f) {
  const Grid& g = f.grid;
  for (int a = 0; a < g.dim(); ++a)
    require(g.count(a) >= 3, Errc::invalid_argument, "gradient needs at least 3 points per axis");
  VectorField out{g, {}};
  const double h = g.h();
  for (int a = 0; a < g.dim(); ++a) {
    std::vector<double> comp(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      Lattice l = g.lattice(j);
      Lattice lo = l, hi = l;
      lo[a] -= 1;
      hi[a] += 1;
      if (!g.contains(lo)) {
        comp[j] = (f.values[g.index(hi)] - f.values[j]) / h;
      } else if (!g.contains(hi)) {
        comp[j] = (f.values[j] - f.values[g.index(lo)]) / h;
      } else {
        comp[j] = (f.values[g.index(hi)] - f.values[g.index(lo)]) / (2.0 * h);
      }
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace mqs
