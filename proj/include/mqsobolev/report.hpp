// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace mqs {

using json = nlohmann::ordered_json;

/// Outcome of checking `lhs <= constant * (1 + tol) * rhs` over a set of
/// pairs (or points). worst_ratio and tolerance are taken at the decisive
/// pair, the one with the largest ratio / (1 + tol), so that
/// pass == (worst_ratio <= constant_used * (1 + tolerance)) whenever there
/// are no hard failures.
struct InequalityReport {
  std::string name;
  std::uint64_t pairs_checked = 0;
  double worst_ratio = 0.0;
  std::vector<std::vector<double>> worst_pair;  // coordinates of the decisive pair
  double constant_used = 1.0;
  double tolerance = 0.0;
  bool pass = true;

  double max_raw_ratio = 0.0;
  std::uint64_t hard_failures = 0;  // rhs == 0 < lhs
  std::uint64_t failures = 0;
  std::vector<std::size_t> flagged;  // point indices involved in failures (capped)
  json details = json::object();

  json to_json() const;
};

/// Reduction state for the worst pair. Merging is associative and breaks
/// ties on the smaller (a, b), so results do not depend on how pairs are
/// partitioned across workers.
struct WorstPair {
  double score = -1.0;  // ratio / (constant (1 + tol))
  double ratio = 0.0;
  double tol = 0.0;
  std::size_t a = 0, b = 0;
  double max_raw = 0.0;
  std::uint64_t checked = 0, failures = 0, hard = 0;
  std::vector<std::size_t> flagged;

  static constexpr std::size_t flag_cap = 64;

  /// Records one pair. Returns false if it violates the bound.
  bool add(double lhs, double rhs, double constant, double tol, std::size_t a, std::size_t b);
  void merge(const WorstPair& o);
  void flag(std::size_t i);
};

/// Fills the common report fields from a reduction. coords(i) gives a point's coordinates.
template <class Coords>
void finish_report(InequalityReport& r, const WorstPair& w, double constant, Coords&& coords) {
  r.constant_used = constant;
  r.pairs_checked = w.checked;
  r.failures = w.failures;
  r.hard_failures = w.hard;
  r.max_raw_ratio = w.max_raw;
  r.flagged = w.flagged;
  if (w.score >= 0.0) {
    r.worst_ratio = w.ratio;
    r.tolerance = w.tol;
    r.worst_pair = {coords(w.a), coords(w.b)};
  }
  r.pass = w.failures == 0 && w.hard == 0;
}

/// JSON number, or the strings "inf"/"-inf"/"nan" for non-finite values.
json number(double v);

/// |a - b| / max(|a|, |b|, scale): relative error that stays meaningful when
/// both sides cancel down to rounding noise of terms of size `scale`.
double relative_error(double a, double b, double scale = 0.0);

}  // namespace mqs
