// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mqsobolev/grid.hpp"
#include "mqsobolev/jets.hpp"

namespace mqs {

/// Shortest decimal form that reads back to the same double (at most 17 digits).
std::string format_double(double v);

/// Header `index,x,value` (1D) or `index,x,y,value` (2D), one row per grid point.
std::string to_csv(const GridFunction& f);
/// The GridFunction layout preceded by a `# label: <label>` line.
std::string to_csv(const ScalarField& g);
/// One block per component, each opened by `# component a` or `# component a,b`.
std::string to_csv(const Jet& F);

/// Readers check the row count and that every coordinate matches `grid`.
GridFunction grid_function_from_csv(const std::string& text, const Grid& grid);
ScalarField scalar_field_from_csv(const std::string& text, const Grid& grid);
Jet jet_from_csv(const std::string& text, const Grid& grid);

}  // namespace mqs
