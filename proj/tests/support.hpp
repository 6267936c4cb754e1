// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force oracles shared by the test suites. They work from coordinates
// and plain distance comparisons, never from the shell tables or sweeps the
// library uses, so agreement is a genuine cross-check.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/grid.hpp"

namespace oracle {

using mqs::Grid;
using mqs::GridFunction;

inline Grid line(double a, double b, double h) { return Grid::make(1, {a}, {b - a}, h); }
inline Grid square(double a, double b, double h) { return Grid::make(2, {a, a}, {b - a, b - a}, h); }

inline double dist(const Grid& g, std::size_t a, std::size_t b) {
  const auto p = g.point(a), q = g.point(b);
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

// Distinct distances from x to the other points, ascending (up to 1e-9 relative merging).
inline std::vector<double> radii(const Grid& g, std::size_t x) {
  std::vector<double> d;
  for (std::size_t z = 0; z < g.size(); ++z)
    if (z != x) d.push_back(dist(g, x, z));
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  for (double v : d)
    if (out.empty() || v > out.back() * (1 + 1e-9)) out.push_back(v);
  return out;
}

// Points z != x with |z - x| <= rho (closed ball at a realized distance).
inline std::vector<std::size_t> closed_ball(const Grid& g, std::size_t x, double rho) {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < g.size(); ++z)
    if (z != x && dist(g, x, z) <= rho * (1 + 1e-9)) out.push_back(z);
  return out;
}

inline double mq(const GridFunction& f, std::size_t x, double cap = INFINITY) {
  double best = 0.0;
  for (double rho : radii(f.grid, x)) {
    if (!(rho < cap * (1 - 1e-12))) break;
    double s = 0;
    const auto b = closed_ball(f.grid, x, rho);
    for (std::size_t z : b) s += std::abs(f.values[z] - f.values[x]) / dist(f.grid, x, z);
    best = std::max(best, s / b.size());
  }
  return best;
}

inline double centered_max(const GridFunction& f, std::size_t x) {
  double best = std::abs(f.values[x]);
  for (double rho : radii(f.grid, x)) {
    const auto b = closed_ball(f.grid, x, rho);
    double s = std::abs(f.values[x]);
    for (std::size_t z : b) s += std::abs(f.values[z]);
    best = std::max(best, s / (b.size() + 1));
  }
  return best;
}

// 1D only: all intervals [a, b] with a <= x <= b.
inline double uncentered_max(const GridFunction& f, std::size_t x) {
  double best = 0.0;
  const std::size_t n = f.grid.size();
  for (std::size_t a = 0; a <= x; ++a)
    for (std::size_t b = x; b < n; ++b) {
      double s = 0;
      for (std::size_t z = a; z <= b; ++z) s += std::abs(f.values[z]);
      best = std::max(best, s / (b - a + 1));
    }
  return best;
}

inline std::vector<mqs::TestFunction> corpus_1d() {
  using mqs::TestFunction;
  return {TestFunction::polynomial({0.3, -1.0, 0.5, 2.0}), TestFunction::holder_cusp(0.5),
          TestFunction::weierstrass(), TestFunction::sine(2 * M_PI), TestFunction::indicator({-0.25, 0.4}),
          TestFunction::exponential(1.5)};
}

inline std::vector<mqs::TestFunction> smooth_corpus() {
  using mqs::TestFunction;
  return {TestFunction::polynomial({0.3, -1.0, 0.5, 2.0}), TestFunction::sine(2 * M_PI),
          TestFunction::exponential(1.5)};
}

}  // namespace oracle
