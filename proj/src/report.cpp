// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/report.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace mqs {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double relative_error(double a, double b, double scale) {
  const double d = std::abs(a - b);
  const double s = std::max({std::abs(a), std::abs(b), std::abs(scale)});
  return s == 0.0 ? d : d / s;
}

json InequalityReport::to_json() const {
  json j;
  j["name"] = name;
  j["pairs_checked"] = pairs_checked;
  j["worst_ratio"] = number(worst_ratio);
  json wp = json::array();
  for (const auto& p : worst_pair) wp.push_back(p);
  j["worst_pair"] = wp;
  j["constant_used"] = number(constant_used);
  j["tolerance"] = number(tolerance);
  j["pass"] = pass;
  j["max_raw_ratio"] = number(max_raw_ratio);
  j["failures"] = failures;
  j["hard_failures"] = hard_failures;
  j["flagged_points"] = flagged;
  if (!details.empty()) j["details"] = details;
  return j;
}

// Keeps the flag_cap smallest indices, sorted, so the list is partition independent.
void WorstPair::flag(std::size_t i) {
  const auto it = std::lower_bound(flagged.begin(), flagged.end(), i);
  if (it != flagged.end() && *it == i) return;
  flagged.insert(it, i);
  if (flagged.size() > flag_cap) flagged.pop_back();
}

bool WorstPair::add(double lhs, double rhs, double constant, double t, std::size_t pa, std::size_t pb) {
  ++checked;
  if (rhs == 0.0) {
    if (lhs == 0.0) return true;  // 0/0: vacuous
    ++hard;
    flag(pa);
    flag(pb);
    return false;
  }
  const double ratio = lhs / rhs;
  const double score = ratio / (constant * (1.0 + t));
  max_raw = std::max(max_raw, ratio);
  const auto key = std::make_tuple(pa, pb);
  if (score > this->score || (score == this->score && key < std::make_tuple(a, b))) {
    this->score = score;
    this->ratio = ratio;
    this->tol = t;
    a = pa;
    b = pb;
  }
  if (ratio > constant * (1.0 + t)) {
    ++failures;
    flag(pa);
    flag(pb);
    return false;
  }
  return true;
}

void WorstPair::merge(const WorstPair& o) {
  if (o.score > score || (o.score == score && o.score >= 0.0 &&
                          std::make_tuple(o.a, o.b) < std::make_tuple(a, b))) {
    score = o.score;
    ratio = o.ratio;
    tol = o.tol;
    a = o.a;
    b = o.b;
  }
  max_raw = std::max(max_raw, o.max_raw);
  checked += o.checked;
  failures += o.failures;
  hard += o.hard;
  for (std::size_t i : o.flagged) flag(i);
}

}  // namespace mqs
