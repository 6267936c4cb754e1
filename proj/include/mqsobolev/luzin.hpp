// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mqsobolev/grid.hpp"
#include "mqsobolev/report.hpp"

namespace mqs {

/// E_L = {x : g(x) <= L} on the grid of g.
struct LevelSet {
  Grid grid;
  std::vector<std::uint8_t> member;
  double L = 0.0;
  std::size_t member_count = 0;
  double complement_measure = 0.0;  // h^n times the number of non-members
};

LevelSet sublevel_set(const ScalarField& g, double L);

struct TschebyscheffRung {
  double L, measure, bound;
  bool pass;
};

/// |CE_L| <= |g|_1 / L on every rung and |CE_L| nonincreasing along the ladder.
struct TschebyscheffReport {
  double l1_norm = 0.0;
  std::vector<TschebyscheffRung> rungs;
  bool monotone = true;
  bool pass = true;
  json to_json() const;
};

TschebyscheffReport tschebyscheff_check(const ScalarField& g, const std::vector<double>& ladder);

/// Largest lambda' <= lambda for which the double-precision inf-formula is
/// provably lambda-Lipschitz: the gap (lambda - lambda') h absorbs the
/// rounding of every candidate f(y) + lambda' |x - y|.
double guarded_lambda(const GridFunction& f, const LevelSet& E, double lambda);

/// f~(x) = min over y in E of f(y) + lambda' |x - y| with lambda' = guarded_lambda.
GridFunction mcshane_extend(const GridFunction& f, const LevelSet& E, double lambda);

struct LipschitzReport {
  double witness = 0.0;  // max |f(x) - f(y)| / |x - y| over the checked pairs
  double lambda = 0.0;
  std::uint64_t pairs = 0;
  bool pass = true;  // every pair satisfies |f(x) - f(y)| <= lambda |x - y| exactly
};

/// All pairs, or only pairs inside `subset` when given.
LipschitzReport lipschitz_check(const GridFunction& f, double lambda,
                                const std::vector<std::uint8_t>* subset = nullptr);

struct LuzinResult {
  GridFunction approximant;
  LevelSet level;
  double lambda = 0.0;            // 2 c(n) L
  double lambda_effective = 0.0;  // after the rounding guard
  double exceptional_measure = 0.0;
  LipschitzReport approximant_lipschitz;
  LipschitzReport level_set_lipschitz;  // f restricted to E_L
  double agreement_defect = 0.0;        // max over E_L of f - f~
  json to_json() const;
};

/// mq_field -> sublevel_set -> mcshane_extend with lambda = 2 c(n) L.
LuzinResult luzin_pipeline(const GridFunction& f, double L,
                           double cap = std::numeric_limits<double>::infinity());

}  // namespace mqs
