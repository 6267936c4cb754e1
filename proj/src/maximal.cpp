// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "mqsobolev/error.hpp"
#include "mqsobolev/parallel.hpp"
#include "mqsobolev/shells.hpp"

namespace mqs {

namespace {

struct LineMaxima {
  std::vector<double> centered, uncentered, left, right;
};

// One pass over every grid interval [lo, hi]; each interval average is
// computed once and offered to every operator it is admissible for.
LineMaxima line_maxima(const GridFunction& f, double cap) {
  const std::size_t n = f.values.size();
  const double h = f.grid.h();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(f.values[i]);
  LineMaxima m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
               std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  auto lift = [](double& slot, double v) { slot = std::max(slot, v); };
  auto steps_ok = [&](std::size_t k) { return static_cast<double>(k) * h < cap; };
  std::vector<double> row(n);
  for (std::size_t lo = 0; lo < n; ++lo) {
    double s = 0.0;
    for (std::size_t hi = lo; hi < n; ++hi) {
      s += a[hi];
      const double v = s / static_cast<double>(hi - lo + 1);
      const std::size_t len = hi - lo;
      if (static_cast<double>(len) * h <= cap) {
        lift(m.right[lo], v);
        lift(m.left[hi], v);
      }
      row[hi] = static_cast<double>(len) * h < 2.0 * cap ? v : -1.0;

      // [lo, hi] as the domain-clipped centered ball of radius k around x
      if (lo == 0 && hi == n - 1) {
        for (std::size_t x = 0; x < n; ++x)
          if (steps_ok(std::max(x, n - 1 - x))) lift(m.centered[x], v);
      } else if (lo == 0) {
        for (std::size_t x = 0; 2 * x <= hi; ++x)
          if (steps_ok(hi - x)) lift(m.centered[x], v);
      } else if (hi == n - 1) {
        for (std::size_t x = (lo + n) / 2; x < n; ++x)
          if (2 * x >= lo + n - 1 && steps_ok(x - lo)) lift(m.centered[x], v);
      } else if ((lo + hi) % 2 == 0 && steps_ok((hi - lo) / 2)) {
        lift(m.centered[(lo + hi) / 2], v);
      }
    }
    double best = -1.0;
    for (std::size_t x = n; x-- > lo;) {
      best = std::max(best, row[x]);
      lift(m.uncentered[x], best);
    }
  }
  return m;
}

void require_line(const GridFunction& f, const char* what) {
  require(f.grid.dim() == 1, Errc::unsupported_dimension, std::string(what) + " is implemented on 1D grids only");
}

void require_cap(double cap) {
  require(cap > 0.0, Errc::invalid_argument, "radius cap must be positive");
}

}  // namespace

ScalarField centered_maximal(const GridFunction& f, double cap) {
  require_cap(cap);
  const Grid& g = f.grid;
  if (g.dim() == 1) return ScalarField(g, line_maxima(f, cap).centered, "centered_maximal");
  ShellTable table(g);
  const std::size_t limit = table.shells_within(cap);
  std::vector<double> out(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t x = b; x < e; ++x) {
      double best = std::abs(f.values[x]);
      walk_shells(
          g, table, x, limit, [&](std::size_t z, double) { return std::abs(f.values[z]); },
          [&](std::size_t, double sum, std::size_t count) {
            best = std::max(best, sum / static_cast<double>(count));
          },
          std::abs(f.values[x]), 1);
      out[x] = best;
    }
  });
  return ScalarField(g, std::move(out), "centered_maximal");
}

ScalarField uncentered_maximal(const GridFunction& f, double cap) {
  require_line(f, "uncentered maximal function");
  require_cap(cap);
  return ScalarField(f.grid, line_maxima(f, cap).uncentered, "uncentered_maximal");
}

ScalarField one_sided_maximal(const GridFunction& f, Side side, double cap) {
  require_line(f, "one-sided maximal function");
  require_cap(cap);
  auto m = line_maxima(f, cap);
  return side == Side::left ? ScalarField(f.grid, std::move(m.left), "left_maximal")
                            : ScalarField(f.grid, std::move(m.right), "right_maximal");
}

InequalityReport sandwich_check(const GridFunction& f) {
  require_line(f, "sandwich check");
  const auto m = line_maxima(f, unbounded);
  const double bound = 2.0;  // 2^n, n = 1
  WorstPair upper;
  std::uint64_t lower_violations = 0;
  double worst_lower = 0.0;
  for (std::size_t x = 0; x < m.centered.size(); ++x) {
    upper.add(m.uncentered[x], m.centered[x], bound, 0.0, x, x);
    if (m.centered[x] > m.uncentered[x]) {
      ++lower_violations;
      upper.flag(x);
    }
    if (m.uncentered[x] > 0.0) worst_lower = std::max(worst_lower, m.centered[x] / m.uncentered[x]);
  }
  InequalityReport r;
  r.name = "maximal_sandwich";
  finish_report(r, upper, bound, [&](std::size_t i) { return std::vector<double>{f.grid.coord(i, 0)}; });
  r.worst_pair.resize(r.worst_pair.empty() ? 0 : 1);
  r.pass = r.pass && lower_violations == 0;
  r.details["lower_violations"] = lower_violations;
  r.details["max_centered_over_uncentered"] = number(worst_lower);
  return r;
}

}  // namespace mqs
