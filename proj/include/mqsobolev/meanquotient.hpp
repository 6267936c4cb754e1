// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mqsobolev/grid.hpp"
#include "mqsobolev/maximal.hpp"
#include "mqsobolev/report.hpp"
#include "mqsobolev/sampling.hpp"

namespace mqs {

/// Maximal mean difference quotient field MQ_R f (R = cap, possibly unbounded).
struct MQField {
  ScalarField base;
  double cap = unbounded;
  std::vector<std::uint8_t> empty;  // 1 where no admissible ball had a point
  std::size_t empty_count = 0;
};

/// Counting average of |f(z) - f(x)| / |z - x| over B(x, r) \ {x}.
double mean_quotient_at(const GridFunction& f, std::size_t x, double r);

/// Sup of mean_quotient_at over every distinct discrete ball of radius <= cap.
/// On the line these are the balls of radius j h; in the plane every distinct
/// lattice distance is a rung.
MQField mq_field(const GridFunction& f, double cap = unbounded);

/// |B(x, r)| / |B(x, r) ∩ B(y, r)| for |x - y| = r: 2 on the line,
/// pi / (2 pi / 3 - sqrt(3) / 2) in the plane.
double lens_constant(int dim);

struct PairOptions {
  std::uint64_t budget = default_pair_budget;
  std::uint64_t seed = 0;
  /// Keep only pairs whose balls B(x, r), B(y, r), r = |x - y|, lie inside the grid.
  bool interior_only = false;
  /// Multiplicative tolerance kappa * h / |x - y|; 0 makes the check exact.
  double kappa = 4.0;
};

/// True when both open balls of radius |a - b| around a and b stay in the grid.
bool interior_pair(const Grid& grid, std::size_t a, std::size_t b, long n2);

/// Checks |f(x) - f(y)| <= c |x - y| (g(x) + g(y)) over all pairs, or a
/// stratified sample of opt.budget of them.
InequalityReport verify_pointwise(const GridFunction& f, const ScalarField& g, double c,
                                  const PairOptions& opt = {});

/// Exact discrete form of the lens averaging argument: for every pair with a
/// nonempty lens L,
///   |f(x) - f(y)| / |x - y| <= #B_x/#L M_rQf(x) + #B_y/#L M_rQf(y),  r = |x - y|,
/// with actual point counts and tolerance 0 (opt.kappa is ignored).
InequalityReport verify_lens_chain(const GridFunction& f, const PairOptions& opt = {});

/// Lattice test for SMG(f): min(g1, g2) and g1 + g2 are checked with constant c.
/// Throws Errc::precondition unless g1 and g2 both pass first.
InequalityReport smg_lattice_check(const GridFunction& f, const ScalarField& g1, const ScalarField& g2,
                                   double c, const PairOptions& opt = {});

/// Checks MQf <= (g + M^g)(1 + kappa h) and g + M^g <= 2 M^g pointwise for a
/// metric gradient g (constant 1), plus the exact discrete bound
/// MQf <= g + M°g with the center-free maximal function M°.
InequalityReport verify_minimality(const GridFunction& f, const ScalarField& g, const PairOptions& opt = {},
                                   double kappa = 4.0);

/// MQf <= M^(|grad f|) (1 + kappa h) at every non-boundary grid point.
InequalityReport verify_grad_domination(const GridFunction& f, double kappa = 4.0);

/// (|f(x) - f_B|, r MQf(x)) with f_B the average of f over the ball B(x, r) including x.
std::pair<double, double> poincare_pointwise(const GridFunction& f, std::size_t x, double r);

/// |f(x) - f_B| <= r MQf(x) at every point whose ball B(x, r) has a point besides x.
/// Exact with constant 1, tolerance 0; details carry the integral witness for p.
InequalityReport poincare_check(const GridFunction& f, double r, double p = 2.0);

/// [avg |f - f_S|^p]^(1/p) / (diam S [avg |grad f|^p]^(1/p)) over the whole box S.
double poincare_integral(const GridFunction& f, double p);

/// |f(y) - f(x)| <= |y - x|^(1 - 1/p) ||f'||_p over pairs (1D), tolerance kappa h / |y - x|.
InequalityReport holder_check(const GridFunction& f, double p, const PairOptions& opt = {});

}  // namespace mqs
