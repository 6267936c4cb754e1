// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mqsobolev/grid.hpp"
#include "mqsobolev/parallel.hpp"
#include "mqsobolev/report.hpp"
#include "mqsobolev/shells.hpp"

namespace mqs {

inline constexpr std::uint64_t default_pair_budget = 10'000'000;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform [0, 1) draw keyed by (seed, a, b); independent of evaluation order.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t u = splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b);
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

/// Fixed-seed stratified thinning of a pair set. Pairs are binned into
/// distance deciles; when the set exceeds the budget each decile keeps a
/// pair with probability quota/count, the quotas water-filled so that sparse
/// deciles are kept whole.
struct PairPlan {
  std::array<std::uint64_t, 10> counts{};
  std::array<double, 10> keep{};
  std::uint64_t budget = default_pair_budget;
  std::uint64_t seed = 0;
  bool sampled = false;

  void allocate();
  bool keeps(int decile, std::size_t a, std::size_t b) const {
    return !sampled || keep[decile] >= 1.0 || keyed_uniform(seed, a, b) < keep[decile];
  }
  json describe() const;
};

/// Unordered grid pairs (a < b). With max_n2 set, only pairs with squared
/// step distance <= max_n2(a) are visited; accept(a, b, n2) filters further.
struct PairSet {
  const Grid& grid;
  std::function<long(std::size_t)> max_n2;  // empty: no bound
  std::function<bool(std::size_t, std::size_t, long)> accept;

  int decile(long n2) const {
    const double diam = grid.diameter() / grid.h();
    const int d = static_cast<int>(10.0 * std::sqrt(static_cast<double>(n2)) / diam);
    return std::min(std::max(d, 0), 9);
  }

  /// Calls visit(a, b, n2) for every pair in the set.
  template <class Visit>
  void for_each_from(std::size_t a, const ShellTable* table, Visit&& visit) const {
    if (!max_n2 || table == nullptr) {
      for (std::size_t b = a + 1; b < grid.size(); ++b) {
        const long n2 = grid.squared_steps(a, b);
        if (max_n2 && n2 > max_n2(a)) continue;
        if (!accept || accept(a, b, n2)) visit(a, b, n2);
      }
      return;
    }
    const long bound = max_n2(a);
    if (bound <= 0) return;
    const Lattice c = grid.lattice(a);
    const auto& offs = table->offsets();
    const std::size_t limit = std::min(table->shells_below(bound + 1), table->reach(grid, a));
    const auto& shells = table->shells();
    for (std::size_t s = 0; s < limit; ++s)
      for (std::uint32_t k = shells[s].begin; k < shells[s].end; ++k) {
        const Lattice& o = offs[k];
        if (o[1] < 0 || (o[1] == 0 && o[0] < 0)) continue;
        const Lattice z{c[0] + o[0], c[1] + o[1]};
        if (!grid.contains(z)) continue;
        const std::size_t b = grid.index(z);
        if (!accept || accept(a, b, shells[s].n2)) visit(a, b, shells[s].n2);
      }
  }
};

/// Counts the pair set, plans the thinning, then runs check(a, b, n2, acc) on
/// every kept pair in parallel and merges the per-worker accumulators.
template <class Check>
WorstPair run_pairs(const PairSet& set, PairPlan& plan, Check&& check) {
  const Grid& g = set.grid;
  std::unique_ptr<ShellTable> table;
  if (set.max_n2) table = std::make_unique<ShellTable>(g);
  const std::size_t workers = worker_count();
  std::vector<std::array<std::uint64_t, 10>> counts(workers);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t w) {
    for (std::size_t a = b; a < e; ++a)
      set.for_each_from(a, table.get(), [&](std::size_t, std::size_t, long n2) { ++counts[w][set.decile(n2)]; });
  });
  plan.counts = {};
  for (const auto& c : counts)
    for (int d = 0; d < 10; ++d) plan.counts[d] += c[d];
  plan.allocate();
  std::vector<WorstPair> acc(workers);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t w) {
    for (std::size_t a = b; a < e; ++a)
      set.for_each_from(a, table.get(), [&](std::size_t pa, std::size_t pb, long n2) {
        if (plan.keeps(set.decile(n2), pa, pb)) check(pa, pb, n2, acc[w]);
      });
  });
  WorstPair out;
  for (const auto& a : acc) out.merge(a);
  return out;
}

}  // namespace mqs
