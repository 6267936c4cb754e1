// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace mqs {

void PairPlan::allocate() {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  keep.fill(1.0);
  sampled = total > budget;
  if (!sampled) return;
  std::array<int, 10> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return counts[a] < counts[b]; });
  double remaining = static_cast<double>(budget);
  int left = 10;
  for (int d : order) {
    const double quota = remaining / left--;
    if (counts[d] == 0) continue;
    const double c = static_cast<double>(counts[d]);
    keep[d] = std::min(1.0, quota / c);
    remaining -= std::min(quota, c);
  }
}

json PairPlan::describe() const {
  json j;
  j["budget"] = budget;
  j["seed"] = seed;
  j["sampled"] = sampled;
  j["scheme"] = sampled ? "stratified by distance decile, keyed Bernoulli thinning" : "exhaustive";
  j["candidates_per_decile"] = counts;
  if (sampled) j["keep_probability_per_decile"] = keep;
  return j;
}

}  // namespace mqs
