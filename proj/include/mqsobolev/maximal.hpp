// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>

#include "mqsobolev/grid.hpp"
#include "mqsobolev/report.hpp"

namespace mqs {

inline constexpr double unbounded = std::numeric_limits<double>::infinity();

enum class Side { left, right };

/// Hardy-Littlewood maximal functions of |f| with counting averages.
///
/// Admissible sets are the discrete open balls of radius r <= cap around x
/// (center included), clipped to the domain. On the line every operator is
/// evaluated from the same left-to-right interval sums, so the comparisons
/// between them are exact in floating point.
ScalarField centered_maximal(const GridFunction& f, double cap = unbounded);

/// Sup over all grid intervals [a, b] containing x, a <= b (1D only). With a
/// finite cap only intervals of length < 2 cap take part.
ScalarField uncentered_maximal(const GridFunction& f, double cap = unbounded);

/// Sup of averages of |f| over [x, x + r] (right) or [x - r, x] (left), r <= cap.
ScalarField one_sided_maximal(const GridFunction& f, Side side, double cap = unbounded);

/// Checks the centered/uncentered comparison M^f <= Mf <= 2^n M^f pointwise,
/// tolerance 0.
InequalityReport sandwich_check(const GridFunction& f);

}  // namespace mqs
