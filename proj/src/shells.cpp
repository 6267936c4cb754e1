// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/shells.hpp"

#include <algorithm>

namespace mqs {

ShellTable::ShellTable(const Grid& grid) {
  const long r0 = grid.count(0) - 1;
  const long r1 = grid.dim() == 2 ? grid.count(1) - 1 : 0;
  offsets_.reserve(static_cast<std::size_t>((2 * r0 + 1) * (2 * r1 + 1)));
  for (long d1 = -r1; d1 <= r1; ++d1)
    for (long d0 = -r0; d0 <= r0; ++d0)
      if (d0 != 0 || d1 != 0) offsets_.push_back({d0, d1});
  auto n2 = [](const Lattice& o) { return o[0] * o[0] + o[1] * o[1]; };
  std::stable_sort(offsets_.begin(), offsets_.end(),
                   [&](const Lattice& a, const Lattice& b) { return n2(a) < n2(b); });
  for (std::size_t k = 0; k < offsets_.size();) {
    const long v = n2(offsets_[k]);
    std::size_t e = k;
    while (e < offsets_.size() && n2(offsets_[e]) == v) ++e;
    shells_.push_back({v, grid.step_distance(v), static_cast<std::uint32_t>(k),
                       static_cast<std::uint32_t>(e)});
    k = e;
  }
}

std::size_t ShellTable::shells_below(long squared) const {
  return static_cast<std::size_t>(
      std::lower_bound(shells_.begin(), shells_.end(), squared,
                       [](const Shell& s, long v) { return s.n2 < v; }) -
      shells_.begin());
}

std::size_t ShellTable::shells_within(double r) const {
  return static_cast<std::size_t>(
      std::lower_bound(shells_.begin(), shells_.end(), r,
                       [](const Shell& s, double v) { return s.radius < v; }) -
      shells_.begin());
}

std::size_t ShellTable::reach(const Grid& grid, std::size_t x) const {
  const Lattice c = grid.lattice(x);
  const long a = std::max(c[0], grid.count(0) - 1 - c[0]);
  const long b = std::max(c[1], grid.count(1) - 1 - c[1]);
  return shells_below(a * a + b * b + 1);
}

std::size_t ShellTable::ball_size(long squared) const {
  const std::size_t s = shells_below(squared);
  return s == 0 ? 0 : shells_[s - 1].end;
}

}  // namespace mqs
