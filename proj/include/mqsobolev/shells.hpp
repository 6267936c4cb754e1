// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mqsobolev/grid.hpp"

namespace mqs {

/// Lattice offsets grouped by exact squared length. Shell s holds every
/// offset with |o|^2 = n2(s) steps^2; shells are sorted by n2. The discrete
/// open ball B(x, r) without its center is the union of the shells with
/// radius < r, so every ball average on a grid is a prefix over shells.
class ShellTable {
 public:
  struct Shell {
    long n2;
    double radius;
    std::uint32_t begin;
    std::uint32_t end;
  };

  /// All offsets that fit inside the grid's bounding box.
  explicit ShellTable(const Grid& grid);

  const std::vector<Lattice>& offsets() const { return offsets_; }
  const std::vector<Shell>& shells() const { return shells_; }
  /// Number of shells with n2 < squared (the shells forming B(x, sqrt(squared) h)).
  std::size_t shells_below(long squared) const;
  /// Number of shells with radius < r.
  std::size_t shells_within(double r) const;
  /// Number of shells that can still meet the grid when walking out from x.
  std::size_t reach(const Grid& grid, std::size_t x) const;
  /// Offsets (in order) forming the open ball of squared radius `squared`.
  std::size_t ball_size(long squared) const;

 private:
  std::vector<Lattice> offsets_;
  std::vector<Shell> shells_;
};

/// Walks the balls around x shell by shell. For every shell s < limit it adds
/// term(z, radius) over the shell's in-grid points and then calls
/// visit(s, sum, count) with the running totals.
template <class Term, class Visit>
void walk_shells(const Grid& grid, const ShellTable& table, std::size_t x, std::size_t limit,
                 Term&& term, Visit&& visit, double sum = 0.0, std::size_t count = 0) {
  const Lattice c = grid.lattice(x);
  const auto& offs = table.offsets();
  const auto& shells = table.shells();
  limit = std::min(limit, table.reach(grid, x));
  for (std::size_t s = 0; s < limit; ++s) {
    const auto& sh = shells[s];
    for (std::uint32_t k = sh.begin; k < sh.end; ++k) {
      const Lattice z{c[0] + offs[k][0], c[1] + offs[k][1]};
      if (!grid.contains(z)) continue;
      sum += term(grid.index(z), sh.radius);
      ++count;
    }
    visit(s, sum, count);
  }
}

}  // namespace mqs
